// Command-line front end: sweep emitters (CSV/JSON) and the protocol runner.
//
// Exit codes: 0 success / protocol accept, 1 usage or internal error,
// 2 protocol abort.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vacqkd/correlations.hpp"
#include "vacqkd/gaussian_qkd.hpp"
#include "vacqkd/labframe.hpp"
#include "vacqkd/protocol.hpp"

namespace {

using nlohmann::ordered_json;

// Locale-independent scientific formatting with a fixed significand width.
std::string sci(double value, int significant = 9) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific,
                      significant - 1);
    return std::string(buf, res.ptr);
}

// Output never lands partially: write to a sibling temp file, then rename.
void atomic_write(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int significant = 9;
};

std::string render(const Table& table, const std::string& format) {
    if (format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json obj;
            for (std::size_t i = 0; i < table.header.size(); ++i) obj[table.header[i]] = row[i];
            rows.push_back(std::move(obj));
        }
        return rows.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += sci(row[i], table.significant);
        }
        out += '\n';
    }
    return out;
}

std::vector<double> make_grid(double lo, double hi, std::size_t points, bool log_spaced) {
    if (points == 0) throw CLI::ValidationError("grid needs at least one point");
    if (points == 1) return {lo};
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        grid[i] = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    return grid;
}

struct CommonOut {
    std::string path;  // empty or "-" means stdout
    std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, CommonOut& out) {
    cmd->add_option("-o,--out", out.path, "Output path (default: stdout)");
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

// ---------------------------------------------------------------- fig1 ----

struct Fig1Args {
    std::string preset;
    double a = 0.0, d = 0.0, s = 0.0;
    double omega_min = 0.0, omega_max = 0.0;
    std::size_t points = 0;
    bool log_grid = false;
    std::string method = "both";
    CommonOut out;
};

int run_fig1(const Fig1Args& args) {
    double a = args.a, d = args.d, s = args.s;
    double omega_min = args.omega_min, omega_max = args.omega_max;
    std::size_t points = args.points;
    bool log_grid = args.log_grid;

    if (args.preset == "a") {
        if (a == 0.0) a = 60e9;
        if (d == 0.0) d = 2.0e9;
        if (s == 0.0) s = 0.25e9;
        if (omega_min == 0.0) omega_min = 10e9;
        if (omega_max == 0.0) omega_max = 100e9;
        if (points == 0) points = 20;
    } else if (args.preset == "b") {
        if (a == 0.0) a = 14e9;
        if (d == 0.0) d = 5.0e9;
        if (s == 0.0) s = 0.5e9;
        // span both the smeared (impure) low end and the thermal rolloff
        if (omega_min == 0.0) omega_min = 1.5e5;
        if (omega_max == 0.0) omega_max = 2.8e10;
        if (points == 0) points = 25;
        log_grid = true;
    } else if (args.preset.empty()) {
        if (a == 0.0 || d == 0.0 || s == 0.0 || omega_min == 0.0 || omega_max == 0.0)
            throw CLI::ValidationError("fig1: pass --preset a|b or all of --a --d --s --omega-min --omega-max");
        if (points == 0) points = 20;
    } else {
        throw CLI::ValidationError("fig1: unknown preset '" + args.preset + "'");
    }

    vacqkd::DetectorParams future;
    future.a = a;
    future.omega_do = omega_min;
    future.d = d;
    future.s = s;
    future.label = vacqkd::ConeLabel::Future;
    vacqkd::DetectorParams past = future;
    past.label = vacqkd::ConeLabel::Past;

    vacqkd::QuadratureSpec spec;
    spec.rel_tol = 1e-7;

    const auto grid = make_grid(omega_min, omega_max, points, log_grid);
    const bool want_exact = args.method != "approx";
    const bool want_approx = args.method != "exact";

    std::vector<vacqkd::CorrelationRecord> exact;
    if (want_exact) exact = vacqkd::fig1_sweep(future, past, grid, spec, vacqkd::Method::Exact);

    Table table;
    table.header.push_back("omega_do");
    if (want_exact) table.header.push_back("squeeze_exact");
    if (want_approx) table.header.push_back("squeeze_approx");
    if (want_exact) table.header.push_back("purity_exact");
    if (want_approx) table.header.push_back("purity_approx");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        const vacqkd::CorrelationRecord approx =
            vacqkd::correlation_record_approx(grid[i], a);
        if (want_exact) row.push_back(exact[i].dx_minus_0);
        if (want_approx) row.push_back(approx.dx_minus_0);
        if (want_exact) row.push_back(exact[i].purity_minus);
        if (want_approx) row.push_back(approx.purity_minus);
        table.rows.push_back(std::move(row));
    }
    atomic_write(args.out.path, render(table, args.out.format));
    return 0;
}

// -------------------------------------------------------------- table1 ----

struct Table1Args {
    double a = 14e9;
    double omega = 10e9;
    std::vector<double> tau;
    std::vector<double> tmax;
    CommonOut out;
};

int run_table1(const Table1Args& args) {
    std::vector<double> tau = args.tau;
    std::vector<double> tmax = args.tmax;
    if (tau.empty()) {
        tau = vacqkd::table1_default_tau(args.a, args.omega);
        if (tmax.empty()) tmax = vacqkd::table1_default_temperatures();
    }
    const auto rows = vacqkd::table1(args.a, args.omega, tau, tmax);

    Table table;
    table.header = {"tau_o_s", "omega_i_rad_s", "omega_f_rad_s", "delta_t_s", "n_bar_at_Tmax"};
    table.significant = 6;
    for (const auto& row : rows)
        table.rows.push_back({row.tau_o, row.omega_i, row.omega_f, row.delta_t, row.occupancy});
    atomic_write(args.out.path, render(table, args.out.format));
    return 0;
}

// ---------------------------------------------------------------- fig3 ----

struct Fig3Args {
    std::vector<std::vector<double>> curves;  // (omega_do, a)
    double waist = 0.1925;
    double wavelength = 3e-6;
    double z_min = 1e4, z_max = 3e6;
    std::size_t points = 30;
    double beta_rec = 1.0;
    CommonOut out;
};

int run_fig3(const Fig3Args& args) {
    std::vector<std::vector<double>> curves = args.curves;
    if (curves.empty()) curves = {{40e9, 60e9}, {10e9, 14e9}};

    const auto grid = make_grid(args.z_min, args.z_max, args.points, true);
    Table table;
    table.header = {"omega_do_rad_s", "a_rad_s", "z_m", "eta", "i_ab", "chi_be", "key_rate"};
    for (const auto& curve : curves) {
        const auto points = vacqkd::fig3_sweep(curve[0], curve[1], args.waist, args.wavelength,
                                               grid, args.beta_rec);
        for (const auto& p : points)
            table.rows.push_back({curve[0], curve[1], p.z_m, p.eta, p.result.i_ab,
                                  p.result.chi_be, p.result.key_rate});
    }
    atomic_write(args.out.path, render(table, args.out.format));
    return 0;
}

// ------------------------------------------------------------ protocol ----

struct ProtocolArgs {
    std::uint64_t seed = 0;
    std::size_t windows = 20000;
    double reveal = 0.25;
    double beta_rec = 1.0;
    double excess = 0.0;
    // direct source
    std::optional<double> gain;
    // vacuum-chained source
    bool from_vacuum = false;
    double a = 14e9, omega = 10e9;
    double d = 5.0e9, s = 0.5e9;
    std::string method = "approx";
    // channel
    std::optional<double> eta;
    std::optional<double> z;
    double waist = 0.1925, wavelength = 3e-6;
    std::string out_path;
};

int run_protocol_cmd(const ProtocolArgs& args) {
    vacqkd::CorrelationRecord record;
    if (args.from_vacuum) {
        if (args.method == "exact") {
            vacqkd::DetectorParams future;
            future.a = args.a;
            future.omega_do = args.omega;
            future.d = args.d;
            future.s = args.s;
            vacqkd::DetectorParams past = future;
            past.label = vacqkd::ConeLabel::Past;
            vacqkd::QuadratureSpec spec;
            spec.rel_tol = 1e-7;
            record = vacqkd::correlation_record(future, past, spec, vacqkd::Method::Exact);
        } else {
            record = vacqkd::correlation_record_approx(args.omega, args.a);
        }
    } else {
        const double gain = args.gain.value_or(1.0);
        const double v = 2.0 * gain - 1.0;
        record.v_f = record.v_p = v;
        record.c0 = 2.0 * std::sqrt(gain * (gain - 1.0));
        record.cpi2 = -record.c0;
        record.dx_minus_0 = record.dx_plus_pi2 = v - record.c0;
        record.dx_plus_0 = record.dx_minus_pi2 = v + record.c0;
        record.purity_minus = record.purity_plus = record.dx_minus_0 * record.dx_plus_0;
    }

    double eta = 1.0;
    if (args.eta)
        eta = *args.eta;
    else if (args.z)
        eta = vacqkd::rayleigh_eta(args.waist, args.wavelength, *args.z);

    vacqkd::ProtocolConfig config;
    config.cm = vacqkd::cm_from_correlations(record, vacqkd::ChannelParams::from_eta(eta),
                                             args.excess);
    config.n_windows = args.windows;
    config.reveal_fraction = args.reveal;
    config.seed = args.seed;
    config.beta_rec = args.beta_rec;

    const vacqkd::Transcript transcript = vacqkd::run_protocol(config);
    const std::string json = vacqkd::transcript_to_json(transcript) + "\n";

    std::string summary = "decision=" + std::string(transcript.accepted ? "accept" : "abort");
    if (transcript.decision) summary += " key_rate=" + sci(transcript.decision->key_rate, 6);
    summary += " sifted=" + std::to_string(transcript.sifted_count);
    summary += " estimated_eta=" + sci(transcript.estimated_eta, 6);
    if (!transcript.abort_reason.empty()) summary += " reason=" + transcript.abort_reason;
    summary += "\n";

    if (args.out_path.empty() || args.out_path == "-") {
        std::cout << json;
        std::cerr << summary;
    } else {
        atomic_write(args.out_path, json);
        std::cout << summary;
    }
    return transcript.accepted ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vacuum-correlation homodyne and CV-QKD simulation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value config file");
    app.get_config_formatter_base()->comment('#');

    Fig1Args fig1;
    auto* cmd1 = app.add_subcommand(
        "fig1", "Squeezing and purity of the detected vacuum versus peak frequency");
    cmd1->add_option("--preset", fig1.preset, "Bundled parameter set: a or b");
    cmd1->add_option("--a", fig1.a, "Scaling rate, rad/s");
    cmd1->add_option("--d", fig1.d, "Longitudinal width parameter, rad^2/s^2");
    cmd1->add_option("--s", fig1.s, "Transverse width parameter, rad^2/s^2");
    cmd1->add_option("--omega-min", fig1.omega_min, "Sweep start, rad/s");
    cmd1->add_option("--omega-max", fig1.omega_max, "Sweep end, rad/s");
    cmd1->add_option("--points", fig1.points, "Grid points");
    cmd1->add_flag("--log-grid", fig1.log_grid, "Logarithmic sweep grid");
    cmd1->add_option("--method", fig1.method, "exact, approx or both")
        ->check(CLI::IsMember({"exact", "approx", "both"}))
        ->capture_default_str();
    add_output_flags(cmd1, fig1.out);

    Table1Args table1;
    auto* cmd2 = app.add_subcommand("table1", "Lab-frame chirp parameters per initial conformal time");
    cmd2->add_option("--a", table1.a, "Scaling rate, rad/s")->capture_default_str();
    cmd2->add_option("--omega", table1.omega, "Peak conformal frequency, rad/s")
        ->capture_default_str();
    cmd2->add_option("--tau-o", table1.tau, "Initial conformal times, s (default: reference rows)");
    cmd2->add_option("--tmax", table1.tmax, "Background temperatures, K (broadcast or per row)");
    add_output_flags(cmd2, table1.out);

    Fig3Args fig3;
    auto* cmd3 = app.add_subcommand("fig3", "Secret key rate versus distance");
    cmd3->add_option("--curve", fig3.curves,
                     "Source as omega_do a (rad/s); repeatable, default both reference curves")
        ->expected(-1)
        ->type_size(2);
    cmd3->add_option("--waist", fig3.waist, "Beam waist, m")->capture_default_str();
    cmd3->add_option("--wavelength", fig3.wavelength, "Wavelength, m")->capture_default_str();
    cmd3->add_option("--z-min", fig3.z_min, "Smallest distance, m")->capture_default_str();
    cmd3->add_option("--z-max", fig3.z_max, "Largest distance, m")->capture_default_str();
    cmd3->add_option("--points", fig3.points, "Grid points (log-spaced)")->capture_default_str();
    cmd3->add_option("--beta-rec", fig3.beta_rec, "Reconciliation efficiency")
        ->check(CLI::Range(1e-9, 1.0))
        ->capture_default_str();
    add_output_flags(cmd3, fig3.out);

    ProtocolArgs prot;
    auto* cmd4 = app.add_subcommand("protocol", "Run the seeded two-party exchange");
    cmd4->add_option("--seed", prot.seed, "64-bit seed (wall-clock seeding is not available)")
        ->required();
    cmd4->add_option("--windows", prot.windows, "Measurement windows")->capture_default_str();
    cmd4->add_option("--reveal", prot.reveal, "Fraction of sifted data revealed")
        ->check(CLI::Range(1e-9, 1.0))
        ->capture_default_str();
    cmd4->add_option("--beta-rec", prot.beta_rec, "Reconciliation efficiency")
        ->capture_default_str();
    cmd4->add_option("--excess", prot.excess, "Added channel noise (vacuum units)")
        ->capture_default_str();
    cmd4->add_option("--gain", prot.gain, "Source gain G >= 1 (direct EPR source)");
    cmd4->add_flag("--from-vacuum", prot.from_vacuum,
                   "Derive the source from vacuum detection instead of --gain");
    cmd4->add_option("--a", prot.a, "Scaling rate, rad/s")->capture_default_str();
    cmd4->add_option("--omega", prot.omega, "Peak conformal frequency, rad/s")
        ->capture_default_str();
    cmd4->add_option("--d", prot.d, "Longitudinal width (exact method)")->capture_default_str();
    cmd4->add_option("--s", prot.s, "Transverse width (exact method)")->capture_default_str();
    cmd4->add_option("--method", prot.method, "approx or exact vacuum correlations")
        ->check(CLI::IsMember({"approx", "exact"}))
        ->capture_default_str();
    cmd4->add_option("--eta", prot.eta, "Channel transmissivity in (0, 1]");
    cmd4->add_option("--z", prot.z, "Distance, m (transmissivity from the beam geometry)");
    cmd4->add_option("--waist", prot.waist, "Beam waist, m")->capture_default_str();
    cmd4->add_option("--wavelength", prot.wavelength, "Wavelength, m")->capture_default_str();
    cmd4->add_option("-o,--out", prot.out_path, "Transcript path (default: stdout)");

    try {
        app.parse(argc, argv);
        if (cmd1->parsed()) return run_fig1(fig1);
        if (cmd2->parsed()) return run_table1(table1);
        if (cmd3->parsed()) return run_fig3(fig3);
        if (cmd4->parsed()) return run_protocol_cmd(prot);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
