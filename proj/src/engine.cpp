#include "coopsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>

#include "coopsim/errors.hpp"
#include "coopsim/kernels.hpp"
#include "coopsim/mmse.hpp"
#include "coopsim/modem.hpp"

namespace coopsim::engine {

void validate(const SystemConfig& cfg) {
    if (cfg.n_tx < 1) throw Error("config: n_tx must be at least 1");
    if (cfg.n_slots < 1) throw Error("config: n_slots must be at least 1");
    if (cfg.total_power <= 0.0) throw Error("config: total_power must be positive");
    if (cfg.sigma2 <= 0.0) throw Error("config: sigma2 must be positive");
    if (cfg.packets < 1) throw Error("config: packets must be at least 1");
    if (cfg.train_len < 1) throw Error("config: train_len must be at least 1");
    if (cfg.data_len < 1) throw Error("config: data_len must be at least 1");
    if (cfg.alt_rounds < 1) throw Error("config: alt_rounds must be at least 1");
    if (cfg.ridge < 0.0) throw Error("config: ridge must be non-negative");
    if (cfg.n_relays > 0 && (cfg.n_tx != dstc::kCodeN || cfg.n_slots != dstc::kCodeT)) {
        throw UnsupportedDims("config: relay operation requires the 2x2 code dimensions");
    }
    if (cfg.awgn_only && cfg.n_relays != 0) {
        throw Error("config: awgn_only runs have no relays");
    }
    if (cfg.csi == CsiMode::Estimated && cfg.est_iters < 1) {
        throw Error("config: est_iters must be at least 1");
    }
}

std::string alloc_name(Alloc a) { return a == Alloc::Jpa ? "jpa" : "epa"; }
std::string scheme_name(dstc::CodeScheme s) {
    return s == dstc::CodeScheme::DAlamouti ? "dalamouti" : "ralamouti";
}
std::string receiver_name(ReceiverMode m) { return m == ReceiverMode::Closed ? "closed" : "sg"; }
std::string csi_name(CsiMode m) { return m == CsiMode::Genie ? "genie" : "estimated"; }

namespace {

CVec scaled_symbols(const std::vector<cd>& alpha, const CVec& s) {
    CVec x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = alpha[i] * s[i];
    return x;
}

CVec add(CVec a, const CVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

BroadcastRx broadcast_phase(const SystemConfig& cfg, const fading::ChannelSet& ch,
                            const power::PowerAllocation& p, const CVec& s, fading::Rng& rng) {
    BroadcastRx rx;
    rx.r_sd = add(linalg::matvec(ch.H, scaled_symbols(p.sd, s)),
                  fading::draw_noise(rng, cfg.n_tx, cfg.sigma2));
    rx.r_sr.resize(cfg.n_relays);
    for (std::size_t k = 0; k < cfg.n_relays; ++k) {
        rx.r_sr[k] = add(linalg::matvec(ch.F[k], scaled_symbols(p.sr[k], s)),
                         fading::draw_noise(rng, cfg.n_tx, cfg.sigma2));
    }
    return rx;
}

namespace {

// Physical relay transmission of one codeword, noise supplied by the caller:
// slot t carries coef_t * G (U m_t); the transmit coefficient is the
// conjugate of the stored model-form coefficient on receiver-conjugated slots.
CVec relay_block_signal(const CMat& g, const dstc::Codeword& cw, const std::vector<cd>& a) {
    const std::size_t n = cw.m.rows();
    const std::size_t t_slots = cw.m.cols();
    CVec out(n * t_slots);
    for (std::size_t t = 0; t < t_slots; ++t) {
        const cd coef = cw.conj_slot[t] ? std::conj(a[t]) : a[t];
        const CVec col = cw.m.col(t);
        const CVec gc = linalg::matvec(g, col);
        for (std::size_t r = 0; r < n; ++r) out[t * n + r] = coef * gc[r];
    }
    return out;
}

}  // namespace

std::vector<CVec> relay_phase(const SystemConfig& cfg, const fading::ChannelSet& ch,
                              const std::vector<CMat>& randomizers,
                              const power::PowerAllocation& p,
                              const std::vector<CVec>& detected,
                              const std::vector<std::size_t>& reliable, fading::Rng& rng) {
    std::vector<CVec> out(cfg.n_relays);
    for (std::size_t k : reliable) {
        const CMat* u = randomizers.empty() ? nullptr : &randomizers.at(k);
        const dstc::Codeword cw = dstc::encode(cfg.scheme, detected.at(k), u);
        out[k] = add(relay_block_signal(ch.G[k], cw, p.rd[k]),
                     fading::draw_noise(rng, cfg.n_tx * cfg.n_slots, cfg.sigma2));
    }
    return out;
}

std::vector<std::size_t> reliable_set(
    const std::vector<std::uint8_t>& tx_bits,
    const std::vector<std::vector<std::uint8_t>>& detected_bits) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < detected_bits.size(); ++k) {
        if (detected_bits[k] == tx_bits) out.push_back(k);
    }
    return out;
}

namespace {

// Frozen per-packet draws plus the regeneration helpers the adaptation loops
// use: noise is drawn once per (link, index) and reused, signal parts are
// recomputed under whatever powers are current.
struct Ctx {
    const SystemConfig& cfg;
    fading::ChannelSet ch;
    std::vector<CMat> u;                         // per-relay randomizer, may be empty
    std::vector<std::uint8_t> conj_flag;
    std::vector<CVec> pilot_s;                   // train_len symbol vectors
    std::vector<CVec> data_s;
    std::vector<std::uint8_t> data_bits;
    std::vector<CVec> noise_sd;                  // train+data entries of n
    std::vector<std::vector<CVec>> noise_sr;     // per relay
    std::vector<std::vector<CVec>> noise_rd;     // per relay, n*T entries

    explicit Ctx(const SystemConfig& c) : cfg(c) {}

    const CMat* rand_of(std::size_t k) const { return u.empty() ? nullptr : &u[k]; }

    CVec bc_sd(const CVec& s, std::size_t ni, const power::PowerAllocation& p) const {
        return add(linalg::matvec(ch.H, scaled_symbols(p.sd, s)), noise_sd[ni]);
    }

    CVec bc_sr(std::size_t k, const CVec& s, std::size_t ni,
               const power::PowerAllocation& p) const {
        return add(linalg::matvec(ch.F[k], scaled_symbols(p.sr[k], s)), noise_sr[k][ni]);
    }

    // Physical N*T block from relay k re-encoding symbol vector s.
    CVec rd_block(std::size_t k, const CVec& s, std::size_t ni,
                  const power::PowerAllocation& p) const {
        const dstc::Codeword cw = dstc::encode(cfg.scheme, s, rand_of(k));
        return add(relay_block_signal(ch.G[k], cw, p.rd[k]), noise_rd[k][ni]);
    }

    // Stacked destination vector with receiver conjugation on flagged slots.
    CVec stacked(const CVec& s, std::size_t ni, const power::PowerAllocation& p,
                 const std::vector<std::size_t>& reliable) const {
        const std::size_t n = cfg.n_tx;
        const std::size_t t_slots = cfg.n_slots;
        CVec out(n * (1 + reliable.size() * t_slots));
        const CVec direct = bc_sd(s, ni, p);
        std::copy(direct.begin(), direct.end(), out.begin());
        for (std::size_t li = 0; li < reliable.size(); ++li) {
            const CVec block = rd_block(reliable[li], s, ni, p);
            for (std::size_t t = 0; t < t_slots; ++t) {
                for (std::size_t a = 0; a < n; ++a) {
                    const cd v = block[t * n + a];
                    out[model::slot_offset(n, t_slots, li, t) + a] =
                        conj_flag[t] ? std::conj(v) : v;
                }
            }
        }
        return out;
    }

    // Model-form (conjugated) view of a relay block, for estimation.
    CVec model_block(const CVec& physical) const {
        const std::size_t n = cfg.n_tx;
        CVec out(physical.size());
        for (std::size_t t = 0; t < cfg.n_slots; ++t) {
            for (std::size_t a = 0; a < n; ++a) {
                const cd v = physical[t * n + a];
                out[t * n + a] = conj_flag[t] ? std::conj(v) : v;
            }
        }
        return out;
    }
};

std::vector<CVec> to_symbol_vectors(const std::vector<std::uint8_t>& bits, std::size_t n) {
    const std::vector<cd> flat = modem::modulate(bits);
    std::vector<CVec> out(flat.size() / n);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = CVec(flat.begin() + static_cast<std::ptrdiff_t>(i * n),
                      flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
    }
    return out;
}

std::vector<std::uint8_t> draw_bits(fading::Rng& rng, std::size_t count) {
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = rng.bit();
    return bits;
}

Ctx make_ctx(const SystemConfig& cfg, const fading::Rng& pkt_rng) {
    Ctx ctx(cfg);
    const std::size_t n = cfg.n_tx;
    const std::size_t total = cfg.train_len + cfg.data_len;

    fading::Rng rng_ch = pkt_rng.derive(0xC0);
    if (cfg.awgn_only) {
        ctx.ch.H = CMat::identity(n);
    } else {
        ctx.ch = fading::draw_channels(rng_ch, cfg.n_relays, n);
    }

    if (cfg.scheme == dstc::CodeScheme::RAlamouti && cfg.n_relays > 0) {
        ctx.u.resize(cfg.n_relays);
        for (std::size_t k = 0; k < cfg.n_relays; ++k) {
            fading::Rng rng_u = cfg.randomizer_per_packet
                                    ? pkt_rng.derive(0xC1, k)
                                    : fading::Rng(cfg.seed).derive(0xC1, k);
            ctx.u[k] = dstc::draw_randomizer(rng_u, n);
        }
    }
    ctx.conj_flag = dstc::conj_slots();

    fading::Rng rng_bits = pkt_rng.derive(0xB0);
    const auto pilot_bits = draw_bits(rng_bits, cfg.train_len * n * modem::kBitsPerSymbol);
    ctx.data_bits = draw_bits(rng_bits, cfg.data_len * n * modem::kBitsPerSymbol);
    ctx.pilot_s = to_symbol_vectors(pilot_bits, n);
    ctx.data_s = to_symbol_vectors(ctx.data_bits, n);

    fading::Rng rng_nsd = pkt_rng.derive(0xA0);
    ctx.noise_sd.resize(total);
    for (auto& v : ctx.noise_sd) v = fading::draw_noise(rng_nsd, n, cfg.sigma2);
    ctx.noise_sr.resize(cfg.n_relays);
    ctx.noise_rd.resize(cfg.n_relays);
    for (std::size_t k = 0; k < cfg.n_relays; ++k) {
        fading::Rng rng_nsr = pkt_rng.derive(0xA1, k);
        fading::Rng rng_nrd = pkt_rng.derive(0xA2, k);
        ctx.noise_sr[k].resize(total);
        for (auto& v : ctx.noise_sr[k]) v = fading::draw_noise(rng_nsr, n, cfg.sigma2);
        ctx.noise_rd[k].resize(total);
        for (auto& v : ctx.noise_rd[k]) {
            v = fading::draw_noise(rng_nrd, n * cfg.n_slots, cfg.sigma2);
        }
    }
    return ctx;
}

// Per-symbol Wiener detection filters for one relay's local receive under the
// given powers.
std::vector<CVec> relay_wiener(const Ctx& ctx, std::size_t k, const power::PowerAllocation& p,
                               double ridge) {
    std::vector<CVec> r(ctx.cfg.train_len), s(ctx.cfg.train_len);
    for (std::size_t i = 0; i < ctx.cfg.train_len; ++i) {
        r[i] = ctx.bc_sr(k, ctx.pilot_s[i], i, p);
        s[i] = ctx.pilot_s[i];
    }
    const mmse::Stats st = mmse::estimate_stats(r, s);
    std::vector<CVec> w(ctx.cfg.n_tx);
    for (std::size_t j = 0; j < ctx.cfg.n_tx; ++j) w[j] = mmse::wiener_filter(st, j, ridge);
    return w;
}

// Destination Wiener filters from the stacked pilot block under the given
// powers and reliable set.
std::vector<CVec> destination_wiener(const Ctx& ctx, const power::PowerAllocation& p,
                                     const std::vector<std::size_t>& reliable, double ridge) {
    std::vector<CVec> r(ctx.cfg.train_len), s(ctx.cfg.train_len);
    for (std::size_t i = 0; i < ctx.cfg.train_len; ++i) {
        r[i] = ctx.stacked(ctx.pilot_s[i], i, p, reliable);
        s[i] = ctx.pilot_s[i];
    }
    const mmse::Stats st = mmse::estimate_stats(r, s);
    std::vector<CVec> w(ctx.cfg.n_tx);
    for (std::size_t j = 0; j < ctx.cfg.n_tx; ++j) w[j] = mmse::wiener_filter(st, j, ridge);
    return w;
}

// Matched filter B_j a_j scaled to unit norm, the SG starting point.
std::vector<CVec> matched_init(const model::LinkModel& m, const power::PowerAllocation& p) {
    const std::size_t n = m.n_sym;
    const std::size_t t_slots = m.n_slots;
    std::vector<CVec> w(n, CVec(m.stack_dim()));
    for (std::size_t j = 0; j < n; ++j) {
        const CVec h_j = m.H.col(j);
        for (std::size_t a = 0; a < n; ++a) w[j][a] = h_j[a] * p.sd[j];
        for (std::size_t li = 0; li < m.reliable.size(); ++li) {
            const std::size_t k = m.reliable[li];
            const CVec a_l(p.rd[k].begin(), p.rd[k].end());
            const CVec da = linalg::matvec(m.D[li][j], a_l);
            for (std::size_t i = 0; i < da.size(); ++i) {
                w[j][model::relay_offset(n, t_slots, li) + i] = da[i];
            }
        }
        const double norm = std::sqrt(kern::sum_abs2(w[j].data(), w[j].size()));
        if (norm > 0.0) kern::rscale(1.0 / norm, w[j].data(), w[j].size());
    }
    return w;
}

model::LinkModel assemble_model(const Ctx& ctx, const std::vector<std::size_t>& reliable,
                                const power::PowerAllocation& p0) {
    const SystemConfig& cfg = ctx.cfg;
    model::LinkModel m;
    m.n_sym = cfg.n_tx;
    m.n_slots = cfg.n_slots;
    m.reliable = reliable;

    if (cfg.csi == CsiMode::Genie) {
        m.H = ctx.ch.H;
        m.F = ctx.ch.F;
        m.D.resize(reliable.size());
        for (std::size_t li = 0; li < reliable.size(); ++li) {
            const std::size_t k = reliable[li];
            m.D[li] = dstc::build_effective_D(ctx.ch.G[k], cfg.scheme, ctx.rand_of(k));
        }
        return m;
    }

    // SG estimation pre-pass sweeping the pilot block cyclically at the
    // initial powers; estimates are frozen before receiver adaptation.
    const std::size_t n = cfg.n_tx;
    m.H = CMat(n, n);
    m.F.assign(cfg.n_relays, CMat(n, n));
    m.D.resize(reliable.size());
    for (auto& blocks : m.D) {
        blocks.assign(n, CMat(n * cfg.n_slots, cfg.n_slots));
    }
    for (std::size_t it = 0; it < cfg.est_iters; ++it) {
        const std::size_t i = it % cfg.train_len;
        const CVec& s = ctx.pilot_s[i];
        chanest::step_H(m.H, ctx.bc_sd(s, i, p0), p0.sd, s, cfg.est);
        for (std::size_t k = 0; k < cfg.n_relays; ++k) {
            chanest::step_H(m.F[k], ctx.bc_sr(k, s, i, p0), p0.sr[k], s, cfg.est);
        }
        for (std::size_t li = 0; li < reliable.size(); ++li) {
            const std::size_t k = reliable[li];
            const CVec r_model = ctx.model_block(ctx.rd_block(k, s, i, p0));
            chanest::step_D(m.D[li], r_model, p0.rd[k], s, cfg.est);
        }
    }
    return m;
}

double power_delta(const power::PowerAllocation& a, const power::PowerAllocation& b) {
    double num = 0.0, den = 0.0;
    auto acc = [&](const std::vector<cd>& x, const std::vector<cd>& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            num += std::norm(x[i] - y[i]);
            den += std::norm(y[i]);
        }
    };
    acc(a.sd, b.sd);
    for (std::size_t k = 0; k < a.sr.size(); ++k) acc(a.sr[k], b.sr[k]);
    for (std::size_t k = 0; k < a.rd.size(); ++k) acc(a.rd[k], b.rd[k]);
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace

PacketResult run_packet(const SystemConfig& cfg, const fading::Rng& pkt_rng,
                        PacketTrace* trace) {
    const std::size_t n = cfg.n_tx;
    const Ctx ctx = make_ctx(cfg, pkt_rng);

    // Relay detection filters and the reliable set, both at equal power.
    const power::PowerAllocation p0 =
        power::equal_power(n, cfg.n_relays, cfg.n_slots, cfg.total_power);
    std::vector<std::vector<CVec>> w_sr(cfg.n_relays);
    std::vector<std::size_t> reliable;
    if (cfg.n_relays > 0) {
        std::vector<std::vector<std::uint8_t>> detected(cfg.n_relays);
        for (std::size_t k = 0; k < cfg.n_relays; ++k) {
            w_sr[k] = relay_wiener(ctx, k, p0, cfg.ridge);
            detected[k].reserve(ctx.data_bits.size());
            for (std::size_t i = 0; i < cfg.data_len; ++i) {
                const CVec r = ctx.bc_sr(k, ctx.data_s[i], cfg.train_len + i, p0);
                for (std::size_t j = 0; j < n; ++j) {
                    std::uint8_t b0 = 0, b1 = 0;
                    modem::hard_pair(mmse::detect(w_sr[k][j], r), b0, b1);
                    detected[k].push_back(b0);
                    detected[k].push_back(b1);
                }
            }
        }
        reliable = reliable_set(ctx.data_bits, detected);
    }

    const model::LinkModel m = assemble_model(ctx, reliable, p0);

    // Destination adaptation.
    power::PowerAllocation p = p0;
    std::vector<CVec> w;
    if (cfg.receiver == ReceiverMode::Closed) {
        if (cfg.alloc == Alloc::Epa) {
            w = destination_wiener(ctx, p, reliable, cfg.ridge);
        } else {
            for (std::size_t round = 0; round < cfg.alt_rounds; ++round) {
                for (std::size_t k : reliable) w_sr[k] = relay_wiener(ctx, k, p, cfg.ridge);
                w = destination_wiener(ctx, p, reliable, cfg.ridge);
                power::PowerAllocation next =
                    mmse::fixed_point_power(m, w, w_sr, p, ctx.pilot_s, cfg.total_power);
                const double delta = power_delta(next, p);
                p = std::move(next);
                if (delta < cfg.alt_tol) break;
            }
            for (std::size_t k : reliable) w_sr[k] = relay_wiener(ctx, k, p, cfg.ridge);
            w = destination_wiener(ctx, p, reliable, cfg.ridge);
        }
    } else {
        adapt::SGConfig sg = cfg.sg;
        sg.adapt_powers = cfg.alloc == Alloc::Jpa;
        adapt::ReceiverState st;
        st.w = matched_init(m, p);
        st.w_sr = w_sr;
        adapt::Sample smp;
        for (std::size_t i = 0; i < cfg.train_len; ++i) {
            smp.r = ctx.stacked(ctx.pilot_s[i], i, p, reliable);
            smp.s = ctx.pilot_s[i];
            smp.r_sr.resize(reliable.size());
            for (std::size_t li = 0; li < reliable.size(); ++li) {
                smp.r_sr[li] = ctx.bc_sr(reliable[li], ctx.pilot_s[i], i, p);
            }
            adapt::sg_step(st, p, m, smp, sg, cfg.total_power);
        }
        w = std::move(st.w);
        w_sr = std::move(st.w_sr);
    }

    // Data phase under the final powers; reliable relays forward their
    // recorded decisions, which match the transmitted symbols by definition.
    PacketResult res;
    res.reliable_count = reliable.size();
    res.bits = static_cast<std::uint64_t>(cfg.data_len) * n * modem::kBitsPerSymbol;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < cfg.data_len; ++i) {
        const CVec r = ctx.stacked(ctx.data_s[i], cfg.train_len + i, p, reliable);
        for (std::size_t j = 0; j < n; ++j) {
            std::uint8_t b0 = 0, b1 = 0;
            modem::hard_pair(mmse::detect(w[j], r), b0, b1);
            const std::size_t base = (i * n + j) * modem::kBitsPerSymbol;
            errors += (b0 != ctx.data_bits[base]) + (b1 != ctx.data_bits[base + 1]);
        }
    }
    res.bit_errors = errors;

    if (trace) {
        trace->channels = ctx.ch;
        trace->reliable = reliable;
        trace->final_power = p;
        trace->noise_probe = ctx.noise_sd[0][0];
        trace->symbol_probe = ctx.data_s[0][0];
    }
    return res;
}

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("COOPSIM_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<BerPoint> sweep(const SystemConfig& cfg, std::vector<double> ebn0_db) {
    validate(cfg);
    if (ebn0_db.empty()) throw Error("sweep: empty Eb/N0 list");
    std::sort(ebn0_db.begin(), ebn0_db.end());

    const std::size_t threads = std::min(resolve_threads(cfg.threads), cfg.packets);
    const fading::Rng base(cfg.seed);
    std::vector<BerPoint> out;
    out.reserve(ebn0_db.size());

    for (std::size_t pt = 0; pt < ebn0_db.size(); ++pt) {
        SystemConfig c = cfg;
        c.sigma2 = fading::ebn0_to_sigma2(ebn0_db[pt]);
        std::vector<PacketResult> results(cfg.packets);

        auto run_range = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t pkt = lo; pkt < hi; ++pkt) {
                results[pkt] = run_packet(c, base.derive(pt + 1, pkt + 1));
            }
        };

        if (threads <= 1) {
            run_range(0, cfg.packets);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errs(threads);
            const std::size_t chunk = (cfg.packets + threads - 1) / threads;
            for (std::size_t t = 0; t < threads; ++t) {
                const std::size_t lo = t * chunk;
                const std::size_t hi = std::min(lo + chunk, cfg.packets);
                pool.emplace_back([&, t, lo, hi] {
                    try {
                        run_range(lo, hi);
                    } catch (...) {
                        errs[t] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& e : errs) {
                if (e) std::rethrow_exception(e);
            }
        }

        BerPoint point;
        point.ebn0_db = ebn0_db[pt];
        point.packets = cfg.packets;
        for (const PacketResult& r : results) {
            point.errors += r.bit_errors;
            point.bits += r.bits;
        }
        point.ber = point.bits > 0 ? static_cast<double>(point.errors) /
                                         static_cast<double>(point.bits)
                                   : 0.0;
        if (cfg.packets > 1) {
            const double mean = static_cast<double>(point.errors) /
                                static_cast<double>(cfg.packets);
            double var = 0.0;
            for (const PacketResult& r : results) {
                const double d = static_cast<double>(r.bit_errors) - mean;
                var += d * d;
            }
            var /= static_cast<double>(cfg.packets - 1);
            const double bits_per_pkt =
                static_cast<double>(point.bits) / static_cast<double>(cfg.packets);
            point.se = std::sqrt(var / static_cast<double>(cfg.packets)) / bits_per_pkt;
        }
        out.push_back(point);
    }
    return out;
}

std::string csv_header() { return "ebn0_db,ber,bits,packets,mode,scheme,n_r"; }

std::string csv_line(const BerPoint& pt, const SystemConfig& cfg) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%.10g,%.10e,%llu,%zu,%s,%s,%zu", pt.ebn0_db, pt.ber,
                  static_cast<unsigned long long>(pt.bits), pt.packets,
                  alloc_name(cfg.alloc).c_str(), scheme_name(cfg.scheme).c_str(),
                  cfg.n_relays);
    return buf;
}

}  // namespace coopsim::engine
