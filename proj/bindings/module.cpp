// Python bindings for the core operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vacqkd/correlations.hpp"
#include "vacqkd/gaussian_qkd.hpp"
#include "vacqkd/labframe.hpp"
#include "vacqkd/protocol.hpp"

namespace py = pybind11;
using namespace vacqkd;

namespace {

const char* type_string(MessageType t) {
    switch (t) {
        case MessageType::BasisAnnounce: return "basis-announce";
        case MessageType::RevealIndices: return "reveal-indices";
        case MessageType::RevealValues: return "reveal-values";
        case MessageType::EstimateReport: return "estimate-report";
        case MessageType::Decision: return "accept/abort";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Vacuum-entanglement homodyne correlations and CV-QKD simulation toolkit";

    py::enum_<ConeLabel>(m, "ConeLabel")
        .value("Future", ConeLabel::Future)
        .value("Past", ConeLabel::Past);
    py::enum_<Method>(m, "Method")
        .value("Exact", Method::Exact)
        .value("Approximate", Method::Approximate);
    py::enum_<Basis>(m, "Basis").value("X", Basis::X).value("P", Basis::P);
    py::enum_<SchedulerOrder>(m, "SchedulerOrder")
        .value("AliceFirst", SchedulerOrder::AliceFirst)
        .value("BobFirst", SchedulerOrder::BobFirst);

    py::class_<DetectorParams>(m, "DetectorParams")
        .def(py::init([](double a, double omega_do, double d, double s, double epsilon,
                         double tau, ConeLabel label) {
                 DetectorParams p{a, omega_do, d, s, epsilon, tau, label};
                 p.validate();
                 return p;
             }),
             py::arg("a"), py::arg("omega_do"), py::arg("d"), py::arg("s"),
             py::arg("epsilon") = 0.0, py::arg("tau") = 0.0,
             py::arg("label") = ConeLabel::Future)
        .def_readwrite("a", &DetectorParams::a)
        .def_readwrite("omega_do", &DetectorParams::omega_do)
        .def_readwrite("d", &DetectorParams::d)
        .def_readwrite("s", &DetectorParams::s)
        .def_readwrite("epsilon", &DetectorParams::epsilon)
        .def_readwrite("tau", &DetectorParams::tau)
        .def_readwrite("label", &DetectorParams::label);
    m.def("validate_pairing", &validate_pairing, py::arg("future"), py::arg("past"));

    py::class_<BogolyubovPair>(m, "BogolyubovPair")
        .def_readonly("a_coef", &BogolyubovPair::a_coef)
        .def_readonly("b_coef", &BogolyubovPair::b_coef);
    m.def("bogolyubov", &bogolyubov, py::arg("omega_d"), py::arg("k_s1"), py::arg("omega_s"),
          py::arg("a"));
    m.def("longitudinal_mode", &longitudinal_mode, py::arg("k_d1"), py::arg("params"));
    m.def("transverse_mode", &transverse_mode, py::arg("k_perp_sq"), py::arg("params"));
    m.def("transverse_weight_2d", &transverse_weight_2d, py::arg("k_perp_sq"), py::arg("s"));
    m.def(
        "effective_longitudinal",
        [](double omega_bar, double k_perp_sq, const DetectorParams& p, double K) {
            const EffectiveAmplitude amp = effective_longitudinal(omega_bar, k_perp_sq, p, K);
            return py::make_tuple(amp.value, amp.near_singular);
        },
        py::arg("omega_bar"), py::arg("k_perp_sq"), py::arg("params"), py::arg("K") = 1.0,
        "Returns (amplitude, near_singular_flag)");
    m.def("unruh_temperature", &unruh_temperature, py::arg("a"));

    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("n_sigma", &QuadratureSpec::n_sigma)
        .def_readwrite("max_evals", &QuadratureSpec::max_evals);

    py::class_<CorrelationRecord>(m, "CorrelationRecord")
        .def(py::init<>())
        .def_readwrite("omega_do", &CorrelationRecord::omega_do)
        .def_readwrite("v_f", &CorrelationRecord::v_f)
        .def_readwrite("v_p", &CorrelationRecord::v_p)
        .def_readwrite("c0", &CorrelationRecord::c0)
        .def_readwrite("cpi2", &CorrelationRecord::cpi2)
        .def_readonly("dx_minus_0", &CorrelationRecord::dx_minus_0)
        .def_readonly("dx_plus_0", &CorrelationRecord::dx_plus_0)
        .def_readonly("dx_minus_pi2", &CorrelationRecord::dx_minus_pi2)
        .def_readonly("dx_plus_pi2", &CorrelationRecord::dx_plus_pi2)
        .def_readonly("purity_minus", &CorrelationRecord::purity_minus)
        .def_readonly("purity_plus", &CorrelationRecord::purity_plus)
        .def_readonly("entangled", &CorrelationRecord::entangled)
        .def_readonly("method", &CorrelationRecord::method);

    m.def("normalization_constant", &normalization_constant, py::arg("params"),
          py::arg("spec") = QuadratureSpec{});
    m.def("signal_variance_exact", &signal_variance_exact, py::arg("params"),
          py::arg("spec") = QuadratureSpec{});
    m.def("signal_variance_approx", &signal_variance_approx, py::arg("omega_do"), py::arg("a"));
    m.def("cross_correlation_exact", &cross_correlation_exact, py::arg("future"),
          py::arg("past"), py::arg("phi"), py::arg("spec") = QuadratureSpec{});
    m.def("dx_minus_approx", &dx_minus_approx, py::arg("omega_do"), py::arg("a"));
    m.def("dx_plus_approx", &dx_plus_approx, py::arg("omega_do"), py::arg("a"));
    m.def("cross_approx", &cross_approx, py::arg("omega_do"), py::arg("a"));
    m.def("correlation_record", &correlation_record, py::arg("future"), py::arg("past"),
          py::arg("spec") = QuadratureSpec{}, py::arg("method") = Method::Exact);
    m.def("correlation_record_approx", &correlation_record_approx, py::arg("omega_do"),
          py::arg("a"));
    m.def("fig1_sweep", &fig1_sweep, py::arg("future"), py::arg("past"), py::arg("omega_grid"),
          py::arg("spec") = QuadratureSpec{}, py::arg("method") = Method::Exact);

    py::class_<TwoModeCovariance>(m, "TwoModeCovariance")
        .def(py::init<>())
        .def_static("from_matrix", &TwoModeCovariance::from_matrix, py::arg("matrix"))
        .def_property_readonly("matrix",
                               [](const TwoModeCovariance& cm) -> Eigen::Matrix4d { return cm.m; })
        .def("is_physical", &TwoModeCovariance::is_physical, py::arg("tol") = 1e-9);

    py::class_<ChannelParams>(m, "ChannelParams")
        .def_static("from_eta", &ChannelParams::from_eta, py::arg("eta"))
        .def_static("from_geometry", &ChannelParams::from_geometry, py::arg("waist_m"),
                    py::arg("wavelength_m"), py::arg("distance_m"))
        .def_readonly("eta", &ChannelParams::eta);

    py::class_<KeyRateResult>(m, "KeyRateResult")
        .def_readonly("i_ab", &KeyRateResult::i_ab)
        .def_readonly("chi_be", &KeyRateResult::chi_be)
        .def_readonly("key_rate", &KeyRateResult::key_rate)
        .def_readonly("nu", &KeyRateResult::nu)
        .def_readonly("beta_rec", &KeyRateResult::beta_rec);

    m.def("epr_correlation", &epr_correlation, py::arg("gain"));
    m.def("effective_gain", &effective_gain, py::arg("omega_do"), py::arg("a"));
    m.def("lossy_correlation", &lossy_correlation, py::arg("gain"), py::arg("eta"));
    m.def("rayleigh_length", &rayleigh_length, py::arg("waist_m"), py::arg("wavelength_m"));
    m.def("rayleigh_eta", &rayleigh_eta, py::arg("waist_m"), py::arg("wavelength_m"),
          py::arg("distance_m"));
    m.def("tmsv_covariance", &tmsv_covariance, py::arg("gain"));
    m.def("cm_from_correlations", &cm_from_correlations, py::arg("record"), py::arg("channel"),
          py::arg("excess") = 0.0);
    m.def("attenuate", &attenuate, py::arg("cm"), py::arg("eta_a"), py::arg("eta_b"));
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("cm"));
    m.def("gaussian_entropy", &gaussian_entropy, py::arg("nu"));
    m.def("key_rate", &key_rate, py::arg("cm"), py::arg("beta_rec") = 1.0);

    py::class_<KeyRatePoint>(m, "KeyRatePoint")
        .def_readonly("z_m", &KeyRatePoint::z_m)
        .def_readonly("eta", &KeyRatePoint::eta)
        .def_readonly("result", &KeyRatePoint::result);
    m.def("fig3_sweep",
          py::overload_cast<double, double, double, double, const std::vector<double>&, double>(
              &fig3_sweep),
          py::arg("omega_do"), py::arg("a"), py::arg("waist_m"), py::arg("wavelength_m"),
          py::arg("z_grid"), py::arg("beta_rec") = 1.0);
    m.def("fig3_sweep_record",
          py::overload_cast<const CorrelationRecord&, double, double, const std::vector<double>&,
                            double>(&fig3_sweep),
          py::arg("source"), py::arg("waist_m"), py::arg("wavelength_m"), py::arg("z_grid"),
          py::arg("beta_rec") = 1.0);

    py::class_<ChirpSample>(m, "ChirpSample")
        .def_readonly("delta_t", &ChirpSample::delta_t)
        .def_readonly("omega", &ChirpSample::omega);
    py::class_<ChirpSchedule>(m, "ChirpSchedule")
        .def_readonly("tau_o", &ChirpSchedule::tau_o)
        .def_readonly("omega_i", &ChirpSchedule::omega_i)
        .def_readonly("omega_f", &ChirpSchedule::omega_f)
        .def_readonly("delta_t", &ChirpSchedule::delta_t)
        .def_readonly("a", &ChirpSchedule::a)
        .def_readonly("omega_do", &ChirpSchedule::omega_do)
        .def_readonly("samples", &ChirpSchedule::samples)
        .def_readonly("occupancy", &ChirpSchedule::occupancy)
        .def_readonly("label", &ChirpSchedule::label);
    m.def("default_scan_log_ratio", &default_scan_log_ratio);
    m.def("lab_interval", &lab_interval, py::arg("tau_o"), py::arg("delta_tau"), py::arg("a"));
    m.def("frequency_ratio", &frequency_ratio, py::arg("a"), py::arg("delta_tau_total"));
    m.def("chirp_frequency", &chirp_frequency, py::arg("omega_do"), py::arg("a"),
          py::arg("tau_o"), py::arg("delta_t"));
    m.def("thermal_occupancy", &thermal_occupancy, py::arg("omega"), py::arg("temperature"));
    m.def("chirp_profile", &chirp_profile, py::arg("omega_do"), py::arg("a"), py::arg("tau_o"),
          py::arg("delta_t_grid") = std::vector<double>{},
          py::arg("label") = ConeLabel::Future, py::arg("temperature") = 300.0,
          py::arg("scan_log_ratio") = default_scan_log_ratio());
    m.def("table1", &table1, py::arg("a"), py::arg("omega_do"), py::arg("tau_rows"),
          py::arg("temperatures") = std::vector<double>{});
    m.def("table1_default_tau", &table1_default_tau, py::arg("a") = 14e9,
          py::arg("omega_do") = 10e9);
    m.def("table1_default_temperatures", &table1_default_temperatures);

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init([](const TwoModeCovariance& cm, std::size_t n_windows,
                         double reveal_fraction, std::uint64_t seed, double beta_rec) {
                 ProtocolConfig c{cm, n_windows, reveal_fraction, seed, beta_rec};
                 c.validate();
                 return c;
             }),
             py::arg("cm"), py::arg("n_windows"), py::arg("reveal_fraction"), py::arg("seed"),
             py::arg("beta_rec") = 1.0)
        .def_readwrite("cm", &ProtocolConfig::cm)
        .def_readwrite("n_windows", &ProtocolConfig::n_windows)
        .def_readwrite("reveal_fraction", &ProtocolConfig::reveal_fraction)
        .def_readwrite("seed", &ProtocolConfig::seed)
        .def_readwrite("beta_rec", &ProtocolConfig::beta_rec);

    m.def(
        "sample_quadratures",
        [](const TwoModeCovariance& cm, std::size_t n, std::uint64_t seed) {
            const auto samples = sample_quadratures(cm, n, seed);
            py::array_t<double> out({n, static_cast<std::size_t>(4)});
            auto view = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < n; ++i) {
                view(i, 0) = samples[i].x_a;
                view(i, 1) = samples[i].p_a;
                view(i, 2) = samples[i].x_b;
                view(i, 3) = samples[i].p_b;
            }
            return out;
        },
        py::arg("cm"), py::arg("n"), py::arg("seed"),
        "Zero-mean Gaussian quadrature samples, one (x_A, p_A, x_B, p_B) row per window");
    m.def("homodyne_gaussian_check", &homodyne_gaussian_check, py::arg("signal_variance"),
          py::arg("lo_amplitude"), py::arg("n"), py::arg("seed"));

    py::class_<RevealedPair>(m, "RevealedPair")
        .def(py::init<Basis, double, double>(), py::arg("basis"), py::arg("alice"),
             py::arg("bob"))
        .def_readwrite("basis", &RevealedPair::basis)
        .def_readwrite("alice", &RevealedPair::alice)
        .def_readwrite("bob", &RevealedPair::bob);
    py::class_<ChannelEstimate>(m, "ChannelEstimate")
        .def_readonly("eta", &ChannelEstimate::eta)
        .def_readonly("cm", &ChannelEstimate::cm)
        .def_readonly("count_x", &ChannelEstimate::count_x)
        .def_readonly("count_p", &ChannelEstimate::count_p);
    m.def("estimate_channel", &estimate_channel, py::arg("pairs"), py::arg("assumed_v_a"));

    py::class_<Message>(m, "Message")
        .def_readonly("sender", &Message::sender)
        .def_property_readonly("type",
                               [](const Message& msg) { return type_string(msg.type); });
    py::class_<Transcript>(m, "Transcript")
        .def_readonly("version", &Transcript::version)
        .def_readonly("n_windows", &Transcript::n_windows)
        .def_readonly("reveal_fraction", &Transcript::reveal_fraction)
        .def_readonly("seed", &Transcript::seed)
        .def_readonly("beta_rec", &Transcript::beta_rec)
        .def_readonly("messages", &Transcript::messages)
        .def_readonly("sifted_count", &Transcript::sifted_count)
        .def_readonly("estimated_cm", &Transcript::estimated_cm)
        .def_readonly("estimated_eta", &Transcript::estimated_eta)
        .def_readonly("accepted", &Transcript::accepted)
        .def_readonly("decision", &Transcript::decision)
        .def_readonly("abort_reason", &Transcript::abort_reason)
        .def("to_json", &transcript_to_json);
    m.def("run_protocol", &run_protocol, py::arg("config"),
          py::arg("order") = SchedulerOrder::AliceFirst);
}
