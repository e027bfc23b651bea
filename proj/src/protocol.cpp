#include "vacqkd/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "vacqkd/rng.hpp"

namespace vacqkd {

void ProtocolConfig::validate() const {
    cm.require_symmetric(1e-9);
    if (n_windows < 100) throw std::invalid_argument("ProtocolConfig: n_windows must be >= 100");
    if (!(reveal_fraction > 0.0) || !(reveal_fraction < 1.0))
        throw std::invalid_argument("ProtocolConfig: reveal_fraction must be in (0, 1)");
    if (!(beta_rec > 0.0) || beta_rec > 1.0)
        throw std::invalid_argument("ProtocolConfig: beta_rec must be in (0, 1]");
}

std::vector<Quadruple> sample_quadratures(const TwoModeCovariance& cm, std::size_t n,
                                          std::uint64_t seed) {
    cm.require_symmetric(1e-9);
    Eigen::LLT<Eigen::Matrix4d> llt(cm.m);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("sample_quadratures: covariance is not positive definite");
    const Eigen::Matrix4d lower = llt.matrixL();

    GaussianStream stream(seed);
    std::vector<Quadruple> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector4d z(stream.next(), stream.next(), stream.next(), stream.next());
        const Eigen::Vector4d v = lower * z;
        out.push_back({v[0], v[1], v[2], v[3]});
    }
    return out;
}

double homodyne_gaussian_check(double signal_variance, double lo_amplitude, std::size_t n,
                               std::uint64_t seed) {
    if (!(signal_variance > 0.0))
        throw std::domain_error("homodyne_gaussian_check: signal_variance must be > 0");
    if (!(lo_amplitude >= 100.0))
        throw std::invalid_argument(
            "homodyne_gaussian_check: classical regime needs lo_amplitude >= 100");
    if (n < 2) throw std::invalid_argument("homodyne_gaussian_check: n must be >= 2");

    // Symmetric-ordered (Wigner) sampling of signal and local-oscillator
    // amplitudes alpha = (x + i p) / 2; the detectors see
    // N1 - N2 = 2 Re(conj(alpha_L) alpha_S).
    GaussianStream stream(seed);
    const double sig = std::sqrt(signal_variance);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xs = sig * stream.next();
        const double ps = sig * stream.next();
        const double xl = stream.next();
        const double pl = stream.next();
        const double diff = (lo_amplitude * xs + 0.5 * (xl * xs + pl * ps)) / lo_amplitude;
        const double delta = diff - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (diff - mean);
    }
    return m2 / static_cast<double>(n - 1);
}

ChannelEstimate estimate_channel(const std::vector<RevealedPair>& pairs, double assumed_v_a) {
    double sums[2][3] = {{0, 0, 0}, {0, 0, 0}};  // per basis: a^2, b^2, a b
    std::size_t counts[2] = {0, 0};
    for (const RevealedPair& p : pairs) {
        const int b = p.basis == Basis::X ? 0 : 1;
        sums[b][0] += p.alice * p.alice;
        sums[b][1] += p.bob * p.bob;
        sums[b][2] += p.alice * p.bob;
        ++counts[b];
    }
    if (counts[0] < 50 || counts[1] < 50)
        throw InsufficientDataError("estimate_channel: need >= 50 revealed pairs per basis");

    const double va_x = sums[0][0] / counts[0], va_p = sums[1][0] / counts[1];
    const double vb_x = sums[0][1] / counts[0], vb_p = sums[1][1] / counts[1];
    const double c_x = sums[0][2] / counts[0], c_p = sums[1][2] / counts[1];

    ChannelEstimate est;
    est.count_x = counts[0];
    est.count_p = counts[1];
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = va_x;
    m(1, 1) = va_p;
    m(2, 2) = vb_x;
    m(3, 3) = vb_p;
    m(0, 2) = m(2, 0) = c_x;
    m(1, 3) = m(3, 1) = c_p;
    est.cm = TwoModeCovariance{m};

    const double denom = assumed_v_a * assumed_v_a - 1.0;
    if (denom > 1e-12) {
        // Lossy-EPR model: C^2 = eta (V_A^2 - 1), averaged over the bases.
        est.eta = std::clamp(0.5 * (c_x * c_x + c_p * c_p) / denom, 0.0, 1.0);
    }
    return est;
}

namespace {

const char* type_name(MessageType t) {
    switch (t) {
        case MessageType::BasisAnnounce: return "basis-announce";
        case MessageType::RevealIndices: return "reveal-indices";
        case MessageType::RevealValues: return "reveal-values";
        case MessageType::EstimateReport: return "estimate-report";
        case MessageType::Decision: return "accept/abort";
    }
    return "?";
}

std::vector<std::uint8_t> choose_bases(GaussianStream& stream, std::size_t n) {
    std::vector<std::uint8_t> bases(n);
    for (auto& b : bases) b = static_cast<std::uint8_t>(stream.next_u64() >> 63);
    return bases;
}

std::vector<std::uint32_t> sift(const std::vector<std::uint8_t>& mine,
                                const std::vector<std::uint8_t>& theirs) {
    std::vector<std::uint32_t> windows;
    for (std::uint32_t i = 0; i < mine.size(); ++i)
        if (mine[i] == theirs[i]) windows.push_back(i);
    return windows;
}

// Measured value of one party in the basis agreed for the window.
double measured(const Quadruple& q, bool alice, Basis basis) {
    if (alice) return basis == Basis::X ? q.x_a : q.p_a;
    return basis == Basis::X ? q.x_b : q.p_b;
}

struct AliceParty {
    const std::vector<Quadruple>& data;
    const ProtocolConfig& config;
    GaussianStream stream;

    std::vector<std::uint8_t> bases;
    std::vector<std::uint32_t> sifted;
    std::vector<std::uint32_t> reveal;  // positions into sifted
    std::vector<double> bob_revealed;

    AliceParty(const std::vector<Quadruple>& d, const ProtocolConfig& c, std::uint64_t seed)
        : data(d), config(c), stream(seed), bases(choose_bases(stream, c.n_windows)) {}

    std::vector<Message> start() {
        return {{"alice", MessageType::BasisAnnounce, BasisAnnouncePayload{bases}}};
    }

    std::vector<Message> receive(const Message& msg) {
        switch (msg.type) {
            case MessageType::BasisAnnounce: {
                sifted = sift(bases, std::get<BasisAnnouncePayload>(msg.payload).bases);
                const auto k = static_cast<std::size_t>(
                    config.reveal_fraction * static_cast<double>(sifted.size()));
                std::vector<std::uint32_t> positions(sifted.size());
                std::iota(positions.begin(), positions.end(), 0u);
                for (std::size_t i = 0; i < k && i + 1 < positions.size(); ++i) {
                    const std::size_t j = i + stream.next_u64() % (positions.size() - i);
                    std::swap(positions[i], positions[j]);
                }
                positions.resize(k);
                std::sort(positions.begin(), positions.end());
                reveal = std::move(positions);

                RevealValuesPayload values;
                values.values.reserve(reveal.size());
                for (std::uint32_t pos : reveal) {
                    const std::uint32_t w = sifted[pos];
                    values.values.push_back(measured(data[w], true, Basis{bases[w]}));
                }
                return {{"alice", MessageType::RevealIndices, RevealIndicesPayload{reveal}},
                        {"alice", MessageType::RevealValues, std::move(values)}};
            }
            case MessageType::RevealValues:
                bob_revealed = std::get<RevealValuesPayload>(msg.payload).values;
                return {};
            case MessageType::EstimateReport: {
                const auto& report = std::get<EstimateReportPayload>(msg.payload);
                DecisionPayload decision;
                if (!report.ok) {
                    decision.abort_reason = "insufficient-estimation-data";
                } else {
                    try {
                        decision.key = key_rate(report.estimate.cm, config.beta_rec);
                        decision.accepted = decision.key->key_rate > 0.0;
                        if (!decision.accepted) decision.abort_reason = "nonpositive-key-rate";
                    } catch (const std::domain_error&) {
                        decision.abort_reason = "degenerate-estimate";
                    }
                }
                return {{"alice", MessageType::Decision, std::move(decision)}};
            }
            default:
                throw std::logic_error("alice: unexpected message type");
        }
    }
};

struct BobParty {
    const std::vector<Quadruple>& data;
    const ProtocolConfig& config;
    GaussianStream stream;

    std::vector<std::uint8_t> bases;
    std::vector<std::uint8_t> alice_bases;
    std::vector<std::uint32_t> sifted;
    std::vector<std::uint32_t> reveal;
    EstimateReportPayload report;
    std::optional<DecisionPayload> decision;

    BobParty(const std::vector<Quadruple>& d, const ProtocolConfig& c, std::uint64_t seed)
        : data(d), config(c), stream(seed), bases(choose_bases(stream, c.n_windows)) {}

    std::vector<Message> receive(const Message& msg) {
        switch (msg.type) {
            case MessageType::BasisAnnounce:
                alice_bases = std::get<BasisAnnouncePayload>(msg.payload).bases;
                sifted = sift(bases, alice_bases);
                return {{"bob", MessageType::BasisAnnounce, BasisAnnouncePayload{bases}}};
            case MessageType::RevealIndices:
                reveal = std::get<RevealIndicesPayload>(msg.payload).indices;
                return {};
            case MessageType::RevealValues: {
                const auto& alice_values = std::get<RevealValuesPayload>(msg.payload).values;
                RevealValuesPayload mine;
                mine.values.reserve(reveal.size());
                std::vector<RevealedPair> pairs;
                pairs.reserve(reveal.size());
                double alice_second_moment = 0.0;
                for (std::size_t i = 0; i < reveal.size(); ++i) {
                    const std::uint32_t w = sifted[reveal[i]];
                    const Basis basis{bases[w]};
                    const double bob_value = measured(data[w], false, basis);
                    mine.values.push_back(bob_value);
                    pairs.push_back({basis, alice_values[i], bob_value});
                    alice_second_moment += alice_values[i] * alice_values[i];
                }
                std::size_t n_x = 0;
                for (const auto& p : pairs)
                    if (p.basis == Basis::X) ++n_x;
                if (n_x >= 50 && pairs.size() - n_x >= 50) {
                    const double pooled_v_a =
                        alice_second_moment / static_cast<double>(pairs.size());
                    report.estimate = estimate_channel(pairs, pooled_v_a);
                    report.ok = true;
                }
                return {{"bob", MessageType::RevealValues, std::move(mine)},
                        {"bob", MessageType::EstimateReport, report}};
            }
            case MessageType::Decision:
                decision = std::get<DecisionPayload>(msg.payload);
                return {};
            default:
                throw std::logic_error("bob: unexpected message type");
        }
    }
};

}  // namespace

Transcript run_protocol(const ProtocolConfig& config, SchedulerOrder order) {
    config.validate();

    std::uint64_t state = config.seed;
    const std::uint64_t sampler_seed = splitmix64(state);
    const std::uint64_t alice_seed = splitmix64(state);
    const std::uint64_t bob_seed = splitmix64(state);

    const std::vector<Quadruple> joint = sample_quadratures(config.cm, config.n_windows,
                                                            sampler_seed);
    AliceParty alice(joint, config, alice_seed);
    BobParty bob(joint, config, bob_seed);

    Transcript transcript;
    transcript.n_windows = config.n_windows;
    transcript.reveal_fraction = config.reveal_fraction;
    transcript.seed = config.seed;
    transcript.beta_rec = config.beta_rec;

    std::deque<Message> to_bob, to_alice;
    auto post = [&](std::vector<Message> msgs) {
        for (Message& m : msgs) {
            transcript.messages.push_back(m);
            (m.sender == "alice" ? to_bob : to_alice).push_back(std::move(m));
        }
    };

    post(alice.start());
    while (!to_bob.empty() || !to_alice.empty()) {
        bool deliver_to_bob;
        if (to_bob.empty())
            deliver_to_bob = false;
        else if (to_alice.empty())
            deliver_to_bob = true;
        else
            deliver_to_bob = order == SchedulerOrder::AliceFirst;
        if (deliver_to_bob) {
            const Message msg = std::move(to_bob.front());
            to_bob.pop_front();
            post(bob.receive(msg));
        } else {
            const Message msg = std::move(to_alice.front());
            to_alice.pop_front();
            post(alice.receive(msg));
        }
    }

    transcript.sifted_count = alice.sifted.size();
    if (bob.report.ok) {
        transcript.estimated_cm = bob.report.estimate.cm;
        transcript.estimated_eta = bob.report.estimate.eta;
    }
    if (!bob.decision) throw std::logic_error("run_protocol: exchange ended without a decision");
    transcript.accepted = bob.decision->accepted;
    transcript.decision = bob.decision->key;
    transcript.abort_reason = bob.decision->abort_reason;
    return transcript;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json cm_to_json(const TwoModeCovariance& cm) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < 4; ++j) row.push_back(cm.m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json key_to_json(const KeyRateResult& key) {
    return ordered_json{{"i_ab", key.i_ab},
                        {"chi_be", key.chi_be},
                        {"key_rate", key.key_rate},
                        {"nu", key.nu},
                        {"beta_rec", key.beta_rec}};
}

ordered_json payload_to_json(const MessagePayload& payload) {
    return std::visit(
        [](const auto& p) -> ordered_json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BasisAnnouncePayload>) {
                return ordered_json{{"bases", p.bases}};
            } else if constexpr (std::is_same_v<T, RevealIndicesPayload>) {
                return ordered_json{{"indices", p.indices}};
            } else if constexpr (std::is_same_v<T, RevealValuesPayload>) {
                return ordered_json{{"values", p.values}};
            } else if constexpr (std::is_same_v<T, EstimateReportPayload>) {
                return ordered_json{{"ok", p.ok},
                                    {"eta", p.estimate.eta},
                                    {"cm", cm_to_json(p.estimate.cm)},
                                    {"count_x", p.estimate.count_x},
                                    {"count_p", p.estimate.count_p}};
            } else {
                ordered_json j{{"accepted", p.accepted}};
                j["key_rate"] = p.key ? key_to_json(*p.key) : ordered_json(nullptr);
                j["abort_reason"] = p.abort_reason;
                return j;
            }
        },
        payload);
}

}  // namespace

std::string transcript_to_json(const Transcript& transcript) {
    ordered_json j;
    j["version"] = transcript.version;
    j["config"] = ordered_json{{"n_windows", transcript.n_windows},
                               {"reveal_fraction", transcript.reveal_fraction},
                               {"seed", transcript.seed},
                               {"beta_rec", transcript.beta_rec}};
    ordered_json msgs = ordered_json::array();
    for (const Message& m : transcript.messages)
        msgs.push_back(ordered_json{
            {"sender", m.sender}, {"type", type_name(m.type)}, {"payload", payload_to_json(m.payload)}});
    j["messages"] = std::move(msgs);
    j["sifted_count"] = transcript.sifted_count;
    j["estimated_eta"] = transcript.estimated_eta;
    j["estimated_cm"] = cm_to_json(transcript.estimated_cm);
    ordered_json decision{{"accepted", transcript.accepted}};
    decision["key_rate"] = transcript.decision ? key_to_json(*transcript.decision)
                                               : ordered_json(nullptr);
    decision["abort_reason"] = transcript.abort_reason;
    j["decision"] = std::move(decision);
    return j.dump();
}

}  // namespace vacqkd
