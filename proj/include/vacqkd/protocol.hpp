#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vacqkd/gaussian_qkd.hpp"

namespace vacqkd {

// Two-party key-distribution run over an in-process message channel:
//   (i)   both parties hold the joint Gaussian state cm per time window;
//   (ii)  each independently picks a quadrature basis per window;
//   (iii) bases are announced and mismatched windows sifted out;
//   (iv)  a random fraction of the sifted data is revealed and the channel
//         estimated from it;
//   (v)   the run is accepted iff the asymptotic key rate of the estimated
//         covariance is positive.
// Everything is driven by one 64-bit seed (substreams per party plus one for
// the state sampler), so transcripts are byte-reproducible.

struct ProtocolConfig {
    TwoModeCovariance cm;  // true joint state per window
    std::size_t n_windows = 10000;
    double reveal_fraction = 0.25;
    std::uint64_t seed = 0;
    double beta_rec = 1.0;

    void validate() const;  // n_windows >= 100, 0 < reveal_fraction < 1
};

enum class Basis : std::uint8_t { X = 0, P = 1 };

struct Quadruple {
    double x_a, p_a, x_b, p_b;
};

// Zero-mean Gaussian samples with covariance cm, via Cholesky factorisation;
// deterministic per seed. Throws on a non-positive matrix.
std::vector<Quadruple> sample_quadratures(const TwoModeCovariance& cm, std::size_t n,
                                          std::uint64_t seed);

// Balanced-detector difference statistics for a Gaussian signal mode against
// a coherent local oscillator of amplitude lo_amplitude (>= 100, the
// classical regime). Returns the lo-normalised difference-current variance,
// which converges to signal_variance as the amplitude grows.
double homodyne_gaussian_check(double signal_variance, double lo_amplitude, std::size_t n,
                               std::uint64_t seed);

struct RevealedPair {
    Basis basis;
    double alice;
    double bob;
};

struct ChannelEstimate {
    double eta = 0.0;
    TwoModeCovariance cm;  // estimated; may be slightly unphysical from noise
    std::size_t count_x = 0;
    std::size_t count_p = 0;
};

// Per-basis second-moment estimates (the state is zero-mean by construction)
// assembled into a covariance matrix; eta inferred from C^2 / (V_A^2 - 1)
// against the lossy-EPR channel model. Requires >= 50 pairs per basis.
ChannelEstimate estimate_channel(const std::vector<RevealedPair>& pairs, double assumed_v_a);

enum class MessageType { BasisAnnounce, RevealIndices, RevealValues, EstimateReport, Decision };

struct BasisAnnouncePayload {
    std::vector<std::uint8_t> bases;
};
struct RevealIndicesPayload {
    std::vector<std::uint32_t> indices;  // positions into the sifted sequence
};
struct RevealValuesPayload {
    std::vector<double> values;
};
struct EstimateReportPayload {
    bool ok = false;  // false when the revealed sample is below the floor
    ChannelEstimate estimate;
};
struct DecisionPayload {
    bool accepted = false;
    std::optional<KeyRateResult> key;
    std::string abort_reason;  // empty when accepted
};

using MessagePayload = std::variant<BasisAnnouncePayload, RevealIndicesPayload,
                                    RevealValuesPayload, EstimateReportPayload, DecisionPayload>;

struct Message {
    std::string sender;  // "alice" or "bob"
    MessageType type = MessageType::BasisAnnounce;
    MessagePayload payload;
};

struct Transcript {
    int version = 1;
    std::size_t n_windows = 0;
    double reveal_fraction = 0.0;
    std::uint64_t seed = 0;
    double beta_rec = 1.0;
    std::vector<Message> messages;  // in send order
    std::size_t sifted_count = 0;
    TwoModeCovariance estimated_cm;
    double estimated_eta = 0.0;
    bool accepted = false;
    std::optional<KeyRateResult> decision;
    std::string abort_reason;
};

// Tie-break policy when both parties have pending input. The exchange is
// strictly alternating, so either order must produce the identical
// transcript; the option exists to let tests check exactly that.
enum class SchedulerOrder { AliceFirst, BobFirst };

Transcript run_protocol(const ProtocolConfig& config,
                        SchedulerOrder order = SchedulerOrder::AliceFirst);

// Stable JSON rendering (fixed key order, shortest round-trip numbers), so
// equal transcripts serialise to equal bytes.
std::string transcript_to_json(const Transcript& transcript);

}  // namespace vacqkd
