// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lapsum/cli/app.hpp"
#include "lapsum/lapsum.hpp"

using namespace lapsum;

namespace {

struct Outcome {
    bool pass = true;
    double worst = 0.0;  // largest deviation seen, against the criterion's tolerance
    std::string note;

    void fail(const std::string& why) {
        if (pass) note = why;
        pass = false;
    }
    void bound(double dev, double tol, const std::string& what) {
        if (!(dev <= tol)) fail(what + ": " + std::to_string(dev) + " > " + std::to_string(tol));
        if (std::isnan(dev) || dev > worst) worst = std::isnan(dev) ? INFINITY : dev;
    }
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> body;
};

SummandSpec power(double z) { return make_summand(Family::power, {.z = z}); }

KernelVariant default_variant(KernelTag k) {
    if (lapsum::detail::is_complex_variant(k)) return make_variant(k, 0.5, 1.0, 2.0);
    return make_variant(k, 1.0, 0.5, 2.0);
}

struct CliRun {
    int code;
    nlohmann::json report;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    args.push_back("--format");
    args.push_back("json");
    const int code = cli::main_entry(args, out, err);
    nlohmann::json j;
    if (!out.str().empty()) j = nlohmann::json::parse(out.str());
    return {code, j};
}

void zeta_via_integral(Outcome& o) {
    for (double z : {2.0, 3.0, 4.0}) {
        const auto r = evaluate_series(make_problem(power(z), KernelTag::base, 1.0), Method::quadrature);
        if (r.path != EvalPath::quadrature) o.fail("z=" + std::to_string(z) + " left the quadrature path");
        const auto ref = sum_direct(power(z), series_shape(make_variant(KernelTag::base, 1.0)), 64,
                                    TailMethod::euler_maclaurin(4));
        o.bound(std::abs(r.value - ref.value), 1e-9, "zeta(" + std::to_string(z) + ")");
    }
}

void cosine_series(Outcome& o) {
    const auto c = make_summand(Family::cosine, {});
    for (double a : {0.3, 1.0, 2.0, 5.0}) {
        const auto r = evaluate_series(make_problem(c, KernelTag::base, a));
        if (r.path != EvalPath::point_mass) o.fail("not on the point-mass path");
        o.bound(std::abs(r.value - cplx(-0.5)), 1e-12, "alpha=" + std::to_string(a));
    }
}

void sine_over_k(Outcome& o) {
    const auto s = make_summand(Family::sine, {});
    for (double a : {0.5, 1.0, 3.0, -0.5, -1.0}) {
        const auto r = evaluate_series(make_problem(s, KernelTag::integrated, a));
        if (r.path != EvalPath::point_mass) o.fail("not on the point-mass path");
        const double want = (a > 0 ? pi - a : -pi - a) / 2.0;
        o.bound(std::abs(r.value - cplx(want)), 1e-10, "alpha=" + std::to_string(a));
    }
}

void hurwitz_expansion(Outcome& o) {
    for (double a : {0.1, 0.3, 0.6})
        for (double beta : {2.0, 3.0}) {
            const auto p = make_problem(make_summand(Family::shifted_power, {.a = a, .beta = beta}), KernelTag::base, 1.0);
            const auto cv = cross_validate(p);
            if (!cv.verdict || !*cv.verdict) o.fail("cross_validate FAIL at a=" + std::to_string(a));
            const auto c = power_series_expand(p, 30, 1.0);
            o.bound(std::abs(averaged_partial_sum(c) - cv.value), 1e-8,
                    "a=" + std::to_string(a) + " beta=" + std::to_string(beta));
        }
}

void logtrig_identities(Outcome& o) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 0.5}}) {
        const auto r = zeta_identity_check(a, b);
        if (!r.verdict || !*r.verdict) o.fail("verdict FAIL at a=" + std::to_string(a));
        o.bound(r.oracle_gap.value_or(INFINITY), 1e-7, "a=" + std::to_string(a));
    }
}

void generating_identities(Outcome& o) {
    int n = 0;
    for (KernelTag k : all_kernels) {
        const auto v = default_variant(k);
        for (double c : {0.5, 1.0, 2.0}) {
            o.bound(std::abs(kernel_eval(v, c) - generating_sum(v, c)), 1e-10,
                    std::string(kernel_name(k)) + " c=" + std::to_string(c));
            ++n;
        }
    }
    if (n != 72) o.fail("expected 24 kernels x 3 points");
}

void quadrature_per_variant(Outcome& o) {
    const auto spec = power(3.0);
    int n = 0;
    for (KernelTag k : all_kernels) {
        if (!spec.admits(k)) continue;
        const auto v = default_variant(k);
        const auto r = cross_validate(make_problem(spec, k, v.alpha, v.beta, v.gamma));
        ++n;
        if (!r.all_checks()) {
            o.fail(std::string(kernel_name(k)) + ": requirement check failed");
            continue;
        }
        o.bound(r.oracle_gap.value_or(INFINITY), 1e-8, std::string(kernel_name(k)));
    }
    o.note = o.pass ? std::to_string(n) + " variants" : o.note;
}

void loop_closure(Outcome& o) {
    for (double z : {2.0, 3.0}) {
        const auto r = loop_check(make_problem(power(z), KernelTag::base, 1.0), {1.0, 2.0}, {0.5, 1.0, 2.0});
        if (!r.verdict || !*r.verdict) o.fail("loop FAIL at z=" + std::to_string(z));
        o.bound(r.oracle_gap.value_or(INFINITY), 1e-6, "z=" + std::to_string(z));
    }
}

void ilt_fidelity(Outcome& o) {
    const SummandSpec specs[] = {power(1.5), power(2.0), power(2.5),
                                 make_summand(Family::shifted_power, {.a = 0.3, .beta = 2.0})};
    for (const auto& s : specs) {
        const auto it = inverse_transform(s);
        const Transform g = [&s](cplx x) { return summand_eval(s, x); };
        for (double t : {0.5, 1.0, 2.0}) {
            const cplx exact = it.density(t);
            o.bound(std::abs(talbot_ilt(g, t, 32) - exact) / std::abs(exact), 1e-6,
                    std::string(family_name(s.family)) + " t=" + std::to_string(t));
        }
    }
}

void partial_summation(Outcome& o) {
    const double z2 = pi * pi / 6.0;
    o.bound(std::abs(weighted_partial_summation(power(3.0), {0.0, 1.0}).value - z2), 1e-8, "k * k^-3");
    o.bound(std::abs(weighted_partial_summation(power(4.0), {0.0, 0.0, 1.0}).value - z2), 1e-8, "k^2 * k^-4");
}

void requirement_gates(Outcome& o) {
    auto gated = [&](const std::string& label, const CliRun& r, int check) {
        if (r.code != cli::exit_code::requirement) o.fail(label + ": exit " + std::to_string(r.code));
        if (!r.report.is_object()) return o.fail(label + ": no report");
        if (r.report["checks"][check] != false) o.fail(label + ": check " + std::to_string(check) + " passed");
        if (r.report["path"] != "OracleOnly") o.fail(label + ": value reported on an integral path");
    };
    gated("divergent shape", cli({"validate", "power(z=2)", "--variant", "differentiated"}), 0);
    gated("point-mass ILT", cli({"eval", "cos()", "--method", "ilt_quadrature"}), 1);
    gated("non-integrable", cli({"eval", "power(z=1)"}), 2);
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "zeta_via_integral", 1.0, zeta_via_integral},
        {2, "cosine_series", 0.1, cosine_series},
        {3, "sine_over_k", 0.1, sine_over_k},
        {4, "hurwitz_expansion", 2.0, hurwitz_expansion},
        {5, "logtrig_zeta_identities", 2.0, logtrig_identities},
        {6, "generating_identities", 1.0, generating_identities},
        {7, "quadrature_per_variant", 5.0, quadrature_per_variant},
        {8, "loop_closure", 3.0, loop_closure},
        {9, "ilt_fidelity", 1.0, ilt_fidelity},
        {10, "partial_summation", 1.0, partial_summation},
        {11, "requirement_gates", 0.1, requirement_gates},
    };
    int failed = 0;
    double total = 0.0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += dt;
        if (dt > c.budget_s) o.fail("runtime " + std::to_string(dt) + " s over budget");
        if (!o.pass) ++failed;
        std::printf("%s %2d %-26s %8.3fs  worst %.2e%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, dt, o.worst,
                    o.note.empty() ? "" : "  ", o.note.c_str());
    }
    const bool in_time = total < 30.0;
    std::printf("total %.3fs (target 30s), %d of %zu criteria failed\n", total, failed, criteria.size());
    return failed || !in_time ? 1 : 0;
}
