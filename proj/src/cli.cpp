#include "coopsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"

namespace coopsim::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

dstc::CodeScheme scheme_of(const std::string& s) {
    if (s == "dalamouti") return dstc::CodeScheme::DAlamouti;
    if (s == "ralamouti") return dstc::CodeScheme::RAlamouti;
    throw Usage("unknown scheme '" + s + "' (expected dalamouti or ralamouti)");
}

engine::Alloc alloc_of(const std::string& s) {
    if (s == "jpa") return engine::Alloc::Jpa;
    if (s == "epa") return engine::Alloc::Epa;
    throw Usage("unknown alloc '" + s + "' (expected jpa or epa)");
}

engine::ReceiverMode receiver_of(const std::string& s) {
    if (s == "closed") return engine::ReceiverMode::Closed;
    if (s == "sg") return engine::ReceiverMode::Sg;
    throw Usage("unknown receiver '" + s + "' (expected closed or sg)");
}

engine::CsiMode csi_of(const std::string& s) {
    if (s == "genie") return engine::CsiMode::Genie;
    if (s == "estimated") return engine::CsiMode::Estimated;
    throw Usage("unknown csi '" + s + "' (expected genie or estimated)");
}

bool bool_of(const std::string& s) {
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    throw Usage("bad boolean '" + s + "'");
}

double double_of(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw Usage("bad number '" + s + "'");
        return v;
    } catch (const Usage&) {
        throw;
    } catch (const std::exception&) {
        throw Usage("bad number '" + s + "'");
    }
}

std::uint64_t uint_of(const std::string& s) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size() || s.find('-') != std::string::npos) {
            throw Usage("bad unsigned value '" + s + "'");
        }
        return v;
    } catch (const Usage&) {
        throw;
    } catch (const std::exception&) {
        throw Usage("bad unsigned value '" + s + "'");
    }
}

std::vector<double> default_grid() { return parse_range("0:2:20"); }

void apply_preset(RunSpec& spec, const std::string& name) {
    spec.preset = name;
    if (name == "custom") {
        spec.curves.clear();  // rebuilt from the base fields after overrides
        return;
    }
    if (name == "fig2") {
        spec.curves = {
            {dstc::CodeScheme::DAlamouti, engine::Alloc::Jpa, 1},
            {dstc::CodeScheme::DAlamouti, engine::Alloc::Epa, 1},
            {dstc::CodeScheme::DAlamouti, engine::Alloc::Jpa, 2},
            {dstc::CodeScheme::DAlamouti, engine::Alloc::Epa, 2},
        };
        return;
    }
    if (name == "fig3") {
        spec.curves = {
            {dstc::CodeScheme::DAlamouti, engine::Alloc::Jpa, 1},
            {dstc::CodeScheme::DAlamouti, engine::Alloc::Epa, 1},
            {dstc::CodeScheme::RAlamouti, engine::Alloc::Jpa, 1},
            {dstc::CodeScheme::RAlamouti, engine::Alloc::Epa, 1},
        };
        return;
    }
    throw Usage("unknown preset '" + name + "' (expected fig2, fig3, or custom)");
}

// One key=value override, shared by the config file and flag application.
void apply_kv(RunSpec& spec, const std::string& key, const std::string& value) {
    engine::SystemConfig& b = spec.base;
    if (key == "ebn0") spec.ebn0 = parse_range(value);
    else if (key == "out") spec.out_dir = value;
    else if (key == "kernels") spec.kernels = value;
    else if (key == "packets") b.packets = uint_of(value);
    else if (key == "seed") b.seed = uint_of(value);
    else if (key == "n_relays") b.n_relays = uint_of(value);
    else if (key == "scheme") b.scheme = scheme_of(value);
    else if (key == "alloc") b.alloc = alloc_of(value);
    else if (key == "receiver") b.receiver = receiver_of(value);
    else if (key == "csi") b.csi = csi_of(value);
    else if (key == "train") b.train_len = uint_of(value);
    else if (key == "data") b.data_len = uint_of(value);
    else if (key == "threads") b.threads = uint_of(value);
    else if (key == "awgn") b.awgn_only = bool_of(value);
    else if (key == "n_tx") b.n_tx = uint_of(value);
    else if (key == "n_slots") b.n_slots = uint_of(value);
    else if (key == "total_power") b.total_power = double_of(value);
    else if (key == "randomizer_per_packet") b.randomizer_per_packet = bool_of(value);
    else if (key == "est_iters") b.est_iters = uint_of(value);
    else if (key == "alt_rounds") b.alt_rounds = uint_of(value);
    else if (key == "alt_tol") b.alt_tol = double_of(value);
    else if (key == "ridge") b.ridge = double_of(value);
    else if (key == "mu") b.sg.mu = double_of(value);
    else if (key == "gamma") b.sg.gamma = double_of(value);
    else if (key == "lambda1") b.sg.lambda1 = double_of(value);
    else if (key == "lambda2") b.sg.lambda2 = double_of(value);
    else if (key == "est_beta") b.est.beta = double_of(value);
    else throw Usage("unknown config key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Flat key=value lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Usage("bad config line '" + line + "'");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Usage("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out << text;
        if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::string::size_type pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() == 1) return {double_of(parts[0])};
    if (parts.size() != 3) throw Usage("bad range '" + text + "' (expected start:step:stop)");
    const double start = double_of(parts[0]);
    const double step = double_of(parts[1]);
    const double stop = double_of(parts[2]);
    if (step <= 0.0) throw Usage("range step must be positive in '" + text + "'");
    if (stop < start) throw Usage("range stop below start in '" + text + "'");
    std::vector<double> out;
    for (double v = start; v <= stop + 1e-9 * step; v += step) out.push_back(v);
    return out;
}

std::optional<RunSpec> parse_args(int argc, const char* const* argv) {
    CLI::App app{"Cooperative-relay BER sweeps (decode-and-forward, distributed space-time codes)"};
    std::string preset, ebn0, scheme, alloc, receiver, csi, out, config, kernels, manifest;
    std::string packets, seed, n_relays, train, data, threads;
    bool awgn = false;

    app.add_option("--preset", preset, "Curve grid: fig2, fig3, or custom");
    app.add_option("--ebn0", ebn0, "Eb/N0 grid in dB, start:step:stop");
    app.add_option("--packets", packets, "Packets per sweep point");
    app.add_option("--seed", seed, "Base RNG seed");
    app.add_option("--n-relays", n_relays, "Relay count (custom preset)");
    app.add_option("--scheme", scheme, "dalamouti or ralamouti (custom preset)");
    app.add_option("--alloc", alloc, "jpa or epa (custom preset)");
    app.add_option("--receiver", receiver, "closed or sg");
    app.add_option("--csi", csi, "genie or estimated");
    app.add_option("--out", out, "Output directory (required)");
    app.add_option("--config", config, "Flat key=value config file");
    app.add_option("--train", train, "Pilot vectors per packet");
    app.add_option("--data", data, "Data vectors per packet");
    app.add_option("--threads", threads, "Worker threads (0: auto)");
    app.add_option("--kernels", kernels, "Force kernel backend (scalar, avx2)");
    app.add_option("--from-manifest", manifest, "Reload a previous run's manifest.json");
    app.add_flag("--awgn", awgn, "Direct link only, identity channel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw Usage(e.what());
    }

    RunSpec spec;
    spec.ebn0 = default_grid();
    if (app.count("--from-manifest")) spec = parse_manifest(read_file(manifest));

    std::map<std::string, std::string> file_kv;
    if (app.count("--config")) file_kv = parse_config_file(config);

    std::string preset_name = spec.preset;
    if (auto it = file_kv.find("preset"); it != file_kv.end()) preset_name = it->second;
    if (app.count("--preset")) preset_name = preset;
    if (preset_name != spec.preset || !app.count("--from-manifest")) {
        apply_preset(spec, preset_name);
    }

    for (const auto& [key, value] : file_kv) {
        if (key == "preset") continue;
        apply_kv(spec, key, value);
    }

    const bool grid_preset = spec.preset != "custom";
    auto flag_kv = [&](const char* flag, const std::string& key, const std::string& value) {
        if (!app.count(flag)) return;
        if (grid_preset && (key == "scheme" || key == "alloc" || key == "n_relays")) {
            throw Usage(std::string(flag) + " conflicts with preset '" + spec.preset +
                        "', which fixes the curve grid");
        }
        apply_kv(spec, key, value);
    };
    flag_kv("--ebn0", "ebn0", ebn0);
    flag_kv("--packets", "packets", packets);
    flag_kv("--seed", "seed", seed);
    flag_kv("--n-relays", "n_relays", n_relays);
    flag_kv("--scheme", "scheme", scheme);
    flag_kv("--alloc", "alloc", alloc);
    flag_kv("--receiver", "receiver", receiver);
    flag_kv("--csi", "csi", csi);
    flag_kv("--out", "out", out);
    flag_kv("--train", "train", train);
    flag_kv("--data", "data", data);
    flag_kv("--threads", "threads", threads);
    flag_kv("--kernels", "kernels", kernels);
    if (awgn) {
        spec.base.awgn_only = true;
        spec.base.n_relays = 0;
    }

    if (spec.preset == "custom" && spec.curves.empty()) {
        spec.curves = {{spec.base.scheme, spec.base.alloc, spec.base.n_relays}};
    }
    if (spec.out_dir.empty()) throw Usage("missing output directory (--out)");
    if (spec.ebn0.empty()) throw Usage("empty Eb/N0 list");
    if (spec.curves.empty()) throw Usage("no curves to run");
    return spec;
}

std::string curve_filename(const CurveSpec& curve) {
    return engine::scheme_name(curve.scheme) + "_" + engine::alloc_name(curve.alloc) + "_nr" +
           std::to_string(curve.n_relays) + ".csv";
}

std::string manifest_text(const RunSpec& spec) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["preset"] = spec.preset;
    j["out"] = spec.out_dir;
    j["kernels"] = spec.kernels;
    j["ebn0"] = spec.ebn0;
    j["curves"] = nlohmann::ordered_json::array();
    for (const CurveSpec& c : spec.curves) {
        j["curves"].push_back({{"scheme", engine::scheme_name(c.scheme)},
                               {"alloc", engine::alloc_name(c.alloc)},
                               {"n_relays", c.n_relays}});
    }
    const engine::SystemConfig& b = spec.base;
    j["config"] = {{"n_tx", b.n_tx},
                   {"n_slots", b.n_slots},
                   {"total_power", b.total_power},
                   {"receiver", engine::receiver_name(b.receiver)},
                   {"csi", engine::csi_name(b.csi)},
                   {"packets", b.packets},
                   {"seed", b.seed},
                   {"train", b.train_len},
                   {"data", b.data_len},
                   {"awgn", b.awgn_only},
                   {"randomizer_per_packet", b.randomizer_per_packet},
                   {"est_iters", b.est_iters},
                   {"alt_rounds", b.alt_rounds},
                   {"alt_tol", b.alt_tol},
                   {"ridge", b.ridge},
                   {"threads", b.threads},
                   {"sg",
                    {{"mu", b.sg.mu},
                     {"gamma", b.sg.gamma},
                     {"lambda1", b.sg.lambda1},
                     {"lambda2", b.sg.lambda2}}},
                   {"est", {{"beta", b.est.beta}}}};
    return j.dump(2) + "\n";
}

RunSpec parse_manifest(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Usage(std::string("bad manifest: ") + e.what());
    }
    try {
        RunSpec spec;
        spec.preset = j.at("preset").get<std::string>();
        spec.out_dir = j.at("out").get<std::string>();
        spec.kernels = j.at("kernels").get<std::string>();
        spec.ebn0 = j.at("ebn0").get<std::vector<double>>();
        spec.curves.clear();
        for (const auto& c : j.at("curves")) {
            CurveSpec cv;
            cv.scheme = scheme_of(c.at("scheme").get<std::string>());
            cv.alloc = alloc_of(c.at("alloc").get<std::string>());
            cv.n_relays = c.at("n_relays").get<std::size_t>();
            spec.curves.push_back(cv);
        }
        const auto& cj = j.at("config");
        engine::SystemConfig& b = spec.base;
        b.n_tx = cj.at("n_tx").get<std::size_t>();
        b.n_slots = cj.at("n_slots").get<std::size_t>();
        b.total_power = cj.at("total_power").get<double>();
        b.receiver = receiver_of(cj.at("receiver").get<std::string>());
        b.csi = csi_of(cj.at("csi").get<std::string>());
        b.packets = cj.at("packets").get<std::size_t>();
        b.seed = cj.at("seed").get<std::uint64_t>();
        b.train_len = cj.at("train").get<std::size_t>();
        b.data_len = cj.at("data").get<std::size_t>();
        b.awgn_only = cj.at("awgn").get<bool>();
        b.randomizer_per_packet = cj.at("randomizer_per_packet").get<bool>();
        b.est_iters = cj.at("est_iters").get<std::size_t>();
        b.alt_rounds = cj.at("alt_rounds").get<std::size_t>();
        b.alt_tol = cj.at("alt_tol").get<double>();
        b.ridge = cj.at("ridge").get<double>();
        b.threads = cj.at("threads").get<std::size_t>();
        b.sg.mu = cj.at("sg").at("mu").get<double>();
        b.sg.gamma = cj.at("sg").at("gamma").get<double>();
        b.sg.lambda1 = cj.at("sg").at("lambda1").get<double>();
        b.sg.lambda2 = cj.at("sg").at("lambda2").get<double>();
        b.est.beta = cj.at("est").at("beta").get<double>();
        if (!spec.curves.empty()) {
            b.scheme = spec.curves[0].scheme;
            b.alloc = spec.curves[0].alloc;
            b.n_relays = spec.curves[0].n_relays;
        }
        return spec;
    } catch (const Usage&) {
        throw;
    } catch (const std::exception& e) {
        throw Usage(std::string("bad manifest: ") + e.what());
    }
}

std::string plot_script_text(const RunSpec& spec) {
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set logscale y\n"
       << "set grid\n"
       << "set xlabel 'Eb/N0 (dB)'\n"
       << "set ylabel 'BER'\n"
       << "set format y '10^{%T}'\n"
       << "set key bottom left\n"
       << "plot \\\n";
    for (std::size_t i = 0; i < spec.curves.size(); ++i) {
        const CurveSpec& c = spec.curves[i];
        gp << "  '" << curve_filename(c) << "' every ::1 using 1:2 with linespoints title '"
           << engine::scheme_name(c.scheme) << " " << engine::alloc_name(c.alloc) << " n_r="
           << c.n_relays << "'";
        gp << (i + 1 < spec.curves.size() ? ", \\\n" : "\n");
    }
    return gp.str();
}

void run(const RunSpec& spec) {
    if (!spec.kernels.empty()) kern::select(spec.kernels);

    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) throw Error("cannot create output directory '" + spec.out_dir + "'");

    for (const CurveSpec& curve : spec.curves) {
        engine::SystemConfig cfg = spec.base;
        cfg.scheme = curve.scheme;
        cfg.alloc = curve.alloc;
        cfg.n_relays = curve.n_relays;
        const std::string name = curve_filename(curve);
        std::vector<engine::BerPoint> points;
        try {
            points = engine::sweep(cfg, spec.ebn0);
        } catch (const std::exception& e) {
            throw Error("curve " + name + ": " + e.what());
        }
        std::ostringstream csv;
        csv << engine::csv_header() << "\n";
        for (const engine::BerPoint& pt : points) csv << engine::csv_line(pt, cfg) << "\n";
        write_file_atomic(std::filesystem::path(spec.out_dir) / name, csv.str());
    }

    RunSpec resolved = spec;
    resolved.kernels = kern::active().name;  // pin the backend for reruns
    write_file_atomic(std::filesystem::path(spec.out_dir) / "manifest.json",
                      manifest_text(resolved));
    write_file_atomic(std::filesystem::path(spec.out_dir) / "plot.gp", plot_script_text(spec));
}

}  // namespace coopsim::cli
