#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include "singseries/acceptance.hpp"
#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/errors.hpp"
#include "singseries/osc.hpp"

namespace singseries::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kScanXMin = 100.0;
constexpr double kCompareXMin = 1000.0;
constexpr std::uint64_t kMinPrimeCutoff = 1000;
constexpr std::uint64_t kMaxPrimeCutoff = 100'000'000;

// Writes to cfg.output_path, or to `fallback` when no path was given.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), os_(&fallback) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary | std::ios::trunc);
        if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }
    void close() {
        if (path_.empty()) {
            os_->flush();
            return;
        }
        file_.close();
        if (!file_) throw std::runtime_error("write to '" + path_ + "' failed");
    }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* os_;
};

ceval::ProductConfig product_config(const RunConfig& cfg) {
    ceval::ProductConfig p;
    p.prime_cutoff = cfg.prime_cutoff;
    return p;
}

json oscillation_json(const mean::OscillationReport& r) {
    json changes = json::array();
    for (const auto& c : r.sign_changes) {
        changes.push_back({{"x_lo", c.x_lo}, {"x_hi", c.x_hi}, {"crossing", c.crossing}, {"direction", c.direction}});
    }
    json out{{"sign_change_count", r.sign_changes.size()},
             {"running_max", r.running_max},
             {"running_min", r.running_min},
             {"period_ratios", r.ratios}};
    out["median_period_ratio"] = r.ratios.empty() ? json(nullptr) : json(mean::median(r.ratios));
    out["sign_changes"] = std::move(changes);
    return out;
}

std::vector<osc::OscillationConstant> model_constants(std::size_t count, const ceval::ProductConfig& pc) {
    std::vector<osc::OscillationConstant> out;
    auto table = osc::zero_table();
    for (std::size_t i = 0; i < count && i < table.size(); ++i) {
        out.push_back(osc::c_rho(osc::refine_zero(table[i].gamma), pc));
    }
    return out;
}

std::vector<mean::ErrorSample> scan(const RunConfig& cfg, double x_min) {
    mean::ScanConfig sc;
    sc.x_min = x_min;
    sc.x_max = cfg.x_max;
    sc.step_log = cfg.step_log;
    sc.segment_size = cfg.segment_size;
    return mean::error_scan(sc, arith::c2());
}

}  // namespace

void validate(const RunConfig& cfg, double x_min) {
    if (!(cfg.x_max >= x_min)) {
        throw UsageError("--x-max must be at least " + std::to_string(static_cast<long long>(x_min)) +
                         " (empty range)");
    }
    if (!(cfg.x_max <= static_cast<double>(mean::kScanXMaxCap))) {
        throw UsageError("--x-max exceeds the build cap " + std::to_string(mean::kScanXMaxCap));
    }
    if (!(cfg.step_log > 0.0 && cfg.step_log <= 0.05)) {
        throw UsageError("--step-log must lie in (0, 0.05]");
    }
    if (cfg.segment_size < 1 || cfg.segment_size > arith::kMaxSegmentLength) {
        throw UsageError("--segments must lie in [1, " + std::to_string(arith::kMaxSegmentLength) + "]");
    }
    if (cfg.prime_cutoff < kMinPrimeCutoff || cfg.prime_cutoff > kMaxPrimeCutoff) {
        throw UsageError("--prime-cutoff must lie in [1000, 100000000]");
    }
}

std::string csv_row(const mean::ErrorSample& s) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.11e,%.11e,%.11e,%.11e", s.x, s.s_of_x, s.e_of_x, s.normalized);
    return buf;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
    const auto pc = product_config(cfg);
    const auto b = ceval::constants_bundle(pc);
    const auto c1 = osc::c_rho(osc::refine_zero(osc::zero_table().front().gamma), pc);
    char c2_text[32];
    std::snprintf(c2_text, sizeof c2_text, "%.15f", b.c2);

    const std::vector<std::pair<std::string, json>> fields = {
        {"C2", c2_text},
        {"A", b.a_const},
        {"B", b.b_const},
        {"C", b.c_const},
        {"C_numeric", b.c_numeric},
        {"euler_gamma", b.euler_gamma},
        {"log_two_pi", b.log_two_pi},
        {"zeta_0", b.zeta_at_zero},
        {"zeta_log_derivative_0", b.zeta_log_derivative_at_zero},
        {"U_log_derivative_0", b.u_log_derivative},
        {"gamma_1", c1.zero.gamma},
        {"c1_abs", std::abs(c1.c_value)},
        {"c1_arg", std::arg(c1.c_value)},
        {"prime_sum_residual", ceval::prime_sum_identity_residual()},
        {"prime_cutoff", cfg.prime_cutoff},
    };

    Sink sink(cfg.output_path, out);
    if (cfg.format == Format::json) {
        json j = json::object();
        for (const auto& [k, v] : fields) j[k] = v;
        sink.stream() << j.dump(2) << '\n';
    } else {
        sink.stream() << "name,value\n";
        for (const auto& [k, v] : fields) {
            sink.stream() << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
    }
    sink.close();
    return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    validate(cfg, kScanXMin);
    const auto samples = scan(cfg, kScanXMin);
    const auto report = mean::oscillation_report(samples);

    Sink sink(cfg.output_path, out);
    if (cfg.format == Format::csv) {
        sink.stream() << "x,S,E,E_norm\n";
        for (const auto& s : samples) sink.stream() << csv_row(s) << '\n';
    } else {
        json rows = json::array();
        for (const auto& s : samples) {
            rows.push_back({{"x", s.x}, {"S", s.s_of_x}, {"E", s.e_of_x}, {"E_norm", s.normalized}});
        }
        sink.stream() << json{{"rows", rows}, {"oscillation", oscillation_json(report)}}.dump(2) << '\n';
    }
    sink.close();

    if (!cfg.output_path.empty()) {
        Sink sidecar(cfg.output_path + ".oscillation.json", out);
        sidecar.stream() << oscillation_json(report).dump(2) << '\n';
        sidecar.close();
    }
    return kExitOk;
}

int cmd_zeros(const RunConfig& cfg, std::ostream& out) {
    const auto constants = model_constants(osc::zero_table().size(), product_config(cfg));
    Sink sink(cfg.output_path, out);
    if (cfg.format == Format::csv) {
        sink.stream() << "gamma,residual,derivative_abs,c_abs,c_arg\n";
        for (const auto& c : constants) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%.11e,%.11e,%.11e,%.11e,%.11e", c.zero.gamma, c.zero.residual,
                          c.zero.derivative_abs, std::abs(c.c_value), std::arg(c.c_value));
            sink.stream() << buf << '\n';
        }
    } else {
        json arr = json::array();
        for (const auto& c : constants) {
            arr.push_back({{"gamma", c.zero.gamma},
                           {"residual", c.zero.residual},
                           {"derivative_abs", c.zero.derivative_abs},
                           {"simple", c.zero.simple},
                           {"c_re", c.c_value.real()},
                           {"c_im", c.c_value.imag()},
                           {"c_abs", std::abs(c.c_value)},
                           {"c_arg", std::arg(c.c_value)}});
        }
        sink.stream() << arr.dump(2) << '\n';
    }
    sink.close();
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    validate(cfg, kCompareXMin);
    const auto samples = scan(cfg, kCompareXMin);
    const auto pc = product_config(cfg);
    json models = json::array();
    for (const std::size_t zeros : {std::size_t{1}, osc::zero_table().size()}) {
        const auto constants = model_constants(zeros, pc);
        const auto r = osc::compare(samples, constants);
        models.push_back({{"zeros", zeros},
                          {"samples", r.samples},
                          {"span_periods", r.span_periods},
                          {"correlation", r.correlation},
                          {"amplitude_ratio", r.amplitude_ratio},
                          {"phase_lag", r.phase_lag},
                          {"fitted_amplitude", r.fitted_amplitude}});
    }
    Sink sink(cfg.output_path, out);
    sink.stream() << json{{"x_min", kCompareXMin}, {"x_max", cfg.x_max}, {"step_log", cfg.step_log},
                          {"models", models}}
                         .dump(2)
                  << '\n';
    sink.close();
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, bool flip_c2_sign) {
    acceptance::Options opt;
    opt.flip_c2_sign = flip_c2_sign;
    opt.scan_step_log = cfg.step_log;
    opt.prime_cutoff = cfg.prime_cutoff;
    int failures = 0;
    for (const auto& r : acceptance::run_all(opt)) {
        out << acceptance::format_line(r) << '\n';
        if (!r.passed) ++failures;
    }
    out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
    return failures == 0 ? kExitOk : kExitFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Singular series means, error-term scans and zeta constants", "singseries"};
    app.require_subcommand(1, 1);

    RunConfig cfg;
    std::string format;
    bool flip = false;

    auto* constants = app.add_subcommand("constants", "Print C2, A, B, C and c1");
    auto* scan_cmd = app.add_subcommand("scan", "Sample E(x) on a geometric grid from x = 100");
    auto* zeros = app.add_subcommand("zeros", "Refine the first ten zeta zeros and their c_rho");
    auto* compare = app.add_subcommand("compare", "Compare the scan from x = 1000 with the zero model");
    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");

    for (auto* sub : {constants, scan_cmd, zeros, compare, verify}) {
        sub->add_option("--prime-cutoff", cfg.prime_cutoff, "Primes multiplied directly in Euler products");
    }
    for (auto* sub : {scan_cmd, compare, verify}) {
        sub->add_option("--step-log", cfg.step_log, "Grid step in log x, in (0, 0.05]");
    }
    for (auto* sub : {scan_cmd, compare}) {
        sub->add_option("--x-max", cfg.x_max, "Upper end of the grid");
        sub->add_option("--segments", cfg.segment_size, "Sieve segment length");
    }
    for (auto* sub : {constants, scan_cmd, zeros, compare}) {
        sub->add_option("--out", cfg.output_path, "Output file (stdout if omitted)");
    }
    for (auto* sub : {constants, scan_cmd, zeros}) {
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
    verify->add_flag("--inject-c2-sign-flip", flip, "Negate C2 inside the checks (harness self-test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const bool scan_like = scan_cmd->parsed();
    cfg.format = format.empty() ? (scan_like ? Format::csv : Format::json)
                                : (format == "csv" ? Format::csv : Format::json);

    try {
        if (cfg.prime_cutoff < kMinPrimeCutoff || cfg.prime_cutoff > kMaxPrimeCutoff) {
            throw UsageError("--prime-cutoff must lie in [1000, 100000000]");
        }
        if (constants->parsed()) return cmd_constants(cfg, out);
        if (scan_cmd->parsed()) return cmd_scan(cfg, out);
        if (zeros->parsed()) return cmd_zeros(cfg, out);
        if (compare->parsed()) return cmd_compare(cfg, out);
        if (!(cfg.step_log > 0.0 && cfg.step_log <= 0.05)) throw UsageError("--step-log must lie in (0, 0.05]");
        return cmd_verify(cfg, out, flip);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace singseries::cli
