#pragma once

// Two-phase decode-and-forward protocol per packet and the Monte-Carlo BER
// harness over Eb/N0 sweeps.
//
// Packet pipeline: draw channels and symbols, train relay detection filters
// on the broadcast pilots at equal power, detect the data at each relay to
// decide the reliable set, assemble the link model (true channels or SG
// estimates), adapt destination filters and powers per the configured modes,
// then detect the data block under the final powers and count bit errors.
// Relays forward known pilots during training and their recorded data
// decisions in the data phase; silent relays transmit nothing.
//
// All randomness comes from substreams derived from (seed, point, packet), so
// runs differing only in allocation mode or code scheme consume identical
// channel, symbol, and noise streams, and results do not depend on the worker
// thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "coopsim/adapt.hpp"
#include "coopsim/chanest.hpp"
#include "coopsim/dstc.hpp"
#include "coopsim/fading.hpp"
#include "coopsim/linalg.hpp"
#include "coopsim/model.hpp"
#include "coopsim/power.hpp"

namespace coopsim::engine {

using linalg::CMat;
using linalg::CVec;
using linalg::cd;

enum class Alloc { Epa, Jpa };
enum class ReceiverMode { Closed, Sg };
enum class CsiMode { Genie, Estimated };

struct SystemConfig {
    std::size_t n_tx = 2;        // antennas per node, symbols per vector
    std::size_t n_slots = 2;     // code slots per relay transmission
    std::size_t n_relays = 1;
    double total_power = 1.0;    // per constraint group
    double sigma2 = 0.1;         // complex noise variance per link
    dstc::CodeScheme scheme = dstc::CodeScheme::DAlamouti;
    ReceiverMode receiver = ReceiverMode::Closed;
    CsiMode csi = CsiMode::Genie;
    Alloc alloc = Alloc::Jpa;
    adapt::SGConfig sg;
    chanest::Config est;
    std::size_t est_iters = 2000;    // estimation pre-pass steps
    std::size_t packets = 2000;
    std::uint64_t seed = 1;
    std::size_t train_len = 500;     // pilot vectors per packet
    std::size_t data_len = 1000;     // data vectors per packet
    bool awgn_only = false;          // identity direct channel, no fading
    bool randomizer_per_packet = true;
    std::size_t alt_rounds = 20;     // closed-form alternation cap
    double alt_tol = 1e-4;           // relative power change to stop at
    double ridge = 1e-8;             // Wiener diagonal loading
    std::size_t threads = 0;         // 0: COOPSIM_THREADS, else hardware
};

// Throws Error when fields are out of range or inconsistent.
void validate(const SystemConfig& cfg);

struct PacketResult {
    std::uint64_t bit_errors = 0;
    std::uint64_t bits = 0;
    std::size_t reliable_count = 0;
};

struct BerPoint {
    double ebn0_db = 0.0;
    double ber = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    std::size_t packets = 0;
    double se = 0.0;   // packet-level standard error of the BER
};

struct BroadcastRx {
    CVec r_sd;
    std::vector<CVec> r_sr;   // per relay
};

// r_sd = H (alpha_sd o s) + n and r_sr_k = F_k (alpha_sr_k o s) + n with
// independent noise per link drawn from rng.
BroadcastRx broadcast_phase(const SystemConfig& cfg, const fading::ChannelSet& ch,
                            const power::PowerAllocation& p, const CVec& s, fading::Rng& rng);

// Per relay: the destination's N*T receive of that relay's codeword (slot
// major, physical, no receiver conjugation), empty for silent relays.
// `detected` holds the symbol vector each relay would forward; `randomizers`
// may be empty for the deterministic scheme.
std::vector<CVec> relay_phase(const SystemConfig& cfg, const fading::ChannelSet& ch,
                              const std::vector<CMat>& randomizers,
                              const power::PowerAllocation& p,
                              const std::vector<CVec>& detected,
                              const std::vector<std::size_t>& reliable, fading::Rng& rng);

// Relays whose detected bits match the transmitted bits exactly.
std::vector<std::size_t> reliable_set(
    const std::vector<std::uint8_t>& tx_bits,
    const std::vector<std::vector<std::uint8_t>>& detected_bits);

// Internals exposed for inspection in tests and diagnostics.
struct PacketTrace {
    fading::ChannelSet channels;
    std::vector<std::size_t> reliable;
    power::PowerAllocation final_power;
    cd noise_probe{};    // first direct-link noise sample
    cd symbol_probe{};   // first data symbol
};

PacketResult run_packet(const SystemConfig& cfg, const fading::Rng& pkt_rng,
                        PacketTrace* trace = nullptr);

// Runs cfg.packets packets per point (concurrently when threads > 1) and
// aggregates; results come back in ascending Eb/N0 order.
std::vector<BerPoint> sweep(const SystemConfig& cfg, std::vector<double> ebn0_db);

// requested > 0 wins; else COOPSIM_THREADS; else the hardware count.
std::size_t resolve_threads(std::size_t requested);

std::string csv_header();
std::string csv_line(const BerPoint& pt, const SystemConfig& cfg);

std::string alloc_name(Alloc a);
std::string scheme_name(dstc::CodeScheme s);
std::string receiver_name(ReceiverMode m);
std::string csi_name(CsiMode m);

}  // namespace coopsim::engine
