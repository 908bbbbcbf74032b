#include "singseries/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "singseries/arith.hpp"
#include "singseries/ceval.hpp"
#include "singseries/compensated.hpp"
#include "singseries/mean.hpp"
#include "singseries/osc.hpp"

namespace singseries::acceptance {

namespace {

using ceval::Complex;

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

struct Outcome {
    bool passed;
    std::string detail;
};

CheckResult timed(int id, const char* name, double budget_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
        out.passed = false;
        out.detail += fmt("; runtime %.1f s over budget %.0f s", secs, budget_seconds);
    }
    return {id, name, out.passed, out.detail, secs};
}

Outcome check_c2(const Options& opt) {
    double c = arith::twin_prime_constant(1e-10, opt.prime_cutoff);
    double doubled = arith::twin_prime_constant(1e-10, 2 * opt.prime_cutoff);
    if (opt.flip_c2_sign) {
        c = -c;
        doubled = -doubled;
    }
    const bool digits = std::floor(c * 1e5) == 66016.0;
    const double drift = std::abs(c - doubled) / std::abs(c);
    return {digits && drift <= 1e-9,
            fmt("C2=%.12f (want 0.66016...), cutoff-doubling drift %.2e (<= 1e-9)", c, drift)};
}

Outcome check_ramanujan() {
    int mismatches = 0;
    for (std::uint64_t q = 1; q <= 200; ++q) {
        for (std::int64_t n = -200; n <= 200; ++n) {
            if (arith::ramanujan_sum(q, n) != arith::ramanujan_sum_bruteforce(q, n)) ++mismatches;
        }
    }
    return {mismatches == 0, fmt("%d mismatches over 1<=q<=200, |n|<=200", mismatches)};
}

Outcome check_constants(const Options& opt) {
    ceval::ProductConfig cfg;
    cfg.prime_cutoff = opt.prime_cutoff;
    const auto b = ceval::constants_bundle(cfg);
    const double inv_c2 = 1.0 / arith::c2();
    const double id_a =
        (4.0 * ceval::zeta(2.0) * ceval::gcal(1.0, cfg) / (5.0 * ceval::zeta(4.0))).real();
    const double id_b = (4.0 * ceval::gcal(0.0, cfg) / (3.0 * ceval::zeta(2.0))).real();
    const double prime_sum = ceval::prime_sum_identity_residual();
    const double target_uld = ceval::log_two_pi() - 1.0;
    const bool ok = std::abs(b.a_const - 0.5) <= 1e-6 && std::abs(b.b_const + 0.5) <= 1e-6 &&
                    std::abs(b.u_log_derivative - target_uld) <= 1e-6 &&
                    std::abs(id_a - inv_c2) <= 1e-8 && std::abs(id_b - inv_c2) <= 1e-8 &&
                    prime_sum < 1e-8;
    return {ok, fmt("A-1/2=%.2e B+1/2=%.2e U'/U-(log2pi-1)=%.2e (each <= 1e-6); "
                    "1/C2 identities %.2e %.2e (<= 1e-8); prime-sum residual %.2e (< 1e-8)",
                    b.a_const - 0.5, b.b_const + 0.5, b.u_log_derivative - target_uld,
                    id_a - inv_c2, id_b - inv_c2, prime_sum)};
}

Outcome check_c1(const Options& opt) {
    const auto zero = osc::refine_zero(14.134725);
    ceval::ProductConfig cfg;
    cfg.prime_cutoff = opt.prime_cutoff;
    const auto c = osc::c_rho(zero, cfg);
    const double mag = std::abs(c.c_value);
    const double dg = std::abs(zero.gamma - 14.134725);
    return {dg <= 1e-6 && std::abs(mag - 0.085) <= 0.005,
            fmt("gamma1=%.9f (|d|=%.1e <= 1e-6), |c1|=%.6f (0.085 +- 0.005), arg c1=%.6f",
                zero.gamma, dg, mag, std::arg(c.c_value))};
}

Outcome check_lemma(const Options& opt) {
    constexpr std::uint64_t kTerms = 1'000'000;
    const auto seg = arith::segmented_g(arith::SegmentRange(1, kTerms + 1));
    const double two_c2 = 2.0 * arith::c2();
    NeumaierSum<double> g3;
    NeumaierSum<double> f2;
    for (std::uint64_t i = kTerms; i-- > 0;) {
        const double k = static_cast<double>(i + 1);
        g3.add(seg.g[i] / (k * k * k));
        if ((i + 1) % 2 == 0) f2.add(two_c2 * seg.g[i] / (k * k));
    }
    ceval::ProductConfig cfg;
    cfg.prime_cutoff = opt.prime_cutoff;
    const double dg = std::abs(ceval::G_of(3.0, cfg).real() - g3.value());
    const double df = std::abs(ceval::F_of(2.0, cfg).real() - f2.value());
    double worst = 0.0;
    for (const Complex s : {Complex(1.5, 0.0), Complex(1.5, 3.0)}) {
        const Complex raw = ceval::G_raw_product(s, cfg);
        const Complex st2 = ceval::G_stage2(s, cfg);
        const Complex st3 = ceval::G_of(s, cfg);
        const double scale = std::abs(st3);
        worst = std::max({worst, std::abs(raw - st2) / scale, std::abs(st2 - st3) / scale,
                          std::abs(raw - st3) / scale});
    }
    return {dg <= 1e-6 && df <= 1e-4 && worst <= 1e-9,
            fmt("|G(3)-partial|=%.2e (<= 1e-6), |F(2)-partial|=%.2e (<= 1e-4), "
                "cascade max rel diff %.2e (<= 1e-9)",
                dg, df, worst)};
}

Outcome check_mean_pipeline() {
    constexpr std::uint64_t kDirect = 2000;
    const double c2 = arith::c2();
    const auto table = arith::build_spf_table(kDirect);
    std::vector<double> sing(kDirect + 1, 0.0);
    for (std::uint64_t k = 2; k <= kDirect; k += 2) sing[k] = 2.0 * c2 * arith::g_from_table(table, k);

    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t x = 1; x <= kDirect; ++x) checkpoints.push_back(x);
    mean::PartialSumStream stream(checkpoints);
    mean::drive_stream(stream, kDirect, 97, c2, 1);
    double worst = 0.0;
    for (std::uint64_t x = 1; x <= kDirect; ++x) {
        double direct = 0.0;
        for (std::uint64_t k = 1; k <= x; ++k) direct += static_cast<double>(x - k) * sing[k];
        const double streamed = mean::cesaro_mean(stream, static_cast<double>(x));
        const double rel = direct == 0.0 ? std::abs(streamed) : std::abs(streamed - direct) / direct;
        worst = std::max(worst, rel);
    }

    constexpr std::uint64_t kChunked = 1'000'000;
    mean::PartialSumStream a;
    mean::PartialSumStream b;
    mean::drive_stream(a, kChunked, std::uint64_t{1} << 16, c2, 1);
    mean::drive_stream(b, kChunked, 12'345, c2, 4);
    const double d0 = std::abs((a.t0() - b.t0()).value()) / a.t0().value();
    const double d1 = std::abs((a.t1() - b.t1()).value()) / a.t1().value();
    return {worst <= 1e-9 && d0 <= 1e-10 && d1 <= 1e-10,
            fmt("stream vs direct max rel %.2e over x<=2000 (<= 1e-9); chunking t0 %.2e t1 %.2e (<= 1e-10)",
                worst, d0, d1)};
}

Outcome check_oscillation(const Options& opt) {
    mean::ScanConfig cfg;
    cfg.x_min = 1e2;
    cfg.x_max = 1e7;
    cfg.step_log = opt.scan_step_log;
    const auto samples = mean::error_scan(cfg, arith::c2());
    const auto report = mean::oscillation_report(samples);
    const double med = report.ratios.empty() ? 0.0 : mean::median(report.ratios);
    const std::size_t changes = report.sign_changes.size();
    const bool ok = changes >= 10 && report.running_max > 0 && report.running_min < 0 && med >= 1.8 &&
                    med <= 3.3;
    return {ok, fmt("%zu samples, %zu sign changes (>= 10), max %.4f (> 0), min %.4f (< 0), "
                    "median period ratio %.4f (in [1.8, 3.3]; single-zero value %.4f)",
                    samples.size(), changes, report.running_max, report.running_min, med,
                    std::exp(4.0 * std::numbers::pi / 14.134725141734693))};
}

Outcome check_zeta() {
    const double pi = std::numbers::pi;
    const double e2 = std::abs(ceval::zeta(2.0).real() - pi * pi / 6) / (pi * pi / 6);
    const double e4 = std::abs(ceval::zeta(4.0).real() - pi * pi * pi * pi / 90) / (pi * pi * pi * pi / 90);
    const auto z0 = ceval::zeta_and_derivative(0.0);
    const double e0 = std::abs(z0.value.real() + 0.5);
    const double eld = std::abs((z0.derivative / z0.value).real() - ceval::log_two_pi());
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> sigma(ceval::kZetaSigmaMin, 3.0);
    std::uniform_real_distribution<double> t(-ceval::kZetaTMax, ceval::kZetaTMax);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Complex s(sigma(rng), t(rng));
        const Complex a = ceval::zeta(std::conj(s));
        const Complex b = std::conj(ceval::zeta(s));
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
    return {e2 <= 1e-10 && e4 <= 1e-10 && e0 <= 1e-8 && eld <= 1e-8 && worst <= 1e-12,
            fmt("zeta(2) rel %.1e, zeta(4) rel %.1e (<= 1e-10); zeta(0)+1/2 %.1e, "
                "zeta'/zeta(0)-log 2pi %.1e (<= 1e-8); conjugate symmetry %.1e (<= 1e-12)",
                e2, e4, e0, eld, worst)};
}

Outcome check_first_moment() {
    std::vector<std::uint64_t> xs = {1'000, 10'000, 100'000, 1'000'000};
    mean::PartialSumStream stream(xs);
    mean::drive_stream(stream, xs.back(), std::uint64_t{1} << 18, arith::c2());
    std::string detail;
    bool ok = true;
    for (const auto x : xs) {
        const double r = mean::first_moment_check(stream, static_cast<double>(x));
        ok = ok && std::abs(r) < 10.0;
        detail += fmt("x=%.0e: %+.4f  ", static_cast<double>(x), r);
    }
    return {ok, detail + "(each |.| < 10)"};
}

}  // namespace

std::vector<CheckResult> run_all(const Options& options) {
    std::vector<CheckResult> out;
    out.push_back(timed(1, "C2 reproduction", 5, [&] { return check_c2(options); }));
    out.push_back(timed(2, "Ramanujan-sum oracle equivalence", 10, check_ramanujan));
    out.push_back(timed(3, "Mellin-residue constants", 0, [&] { return check_constants(options); }));
    out.push_back(timed(4, "Oscillation constant c1", 0, [&] { return check_c1(options); }));
    out.push_back(timed(5, "Generating-function cross-validation", 0, [&] { return check_lemma(options); }));
    out.push_back(timed(6, "Mean-value pipeline", 0, check_mean_pipeline));
    out.push_back(timed(7, "Oscillation evidence", 300, [&] { return check_oscillation(options); }));
    out.push_back(timed(8, "Zeta engine", 0, check_zeta));
    out.push_back(timed(9, "Averaged first moment", 0, check_first_moment));
    return out;
}

std::string format_line(const CheckResult& r) {
    std::ostringstream os;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail
       << fmt(" (%.2f s)", r.seconds);
    return os.str();
}

}  // namespace singseries::acceptance
