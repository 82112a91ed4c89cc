// Small library walkthrough: zeta(z) through the base kernel, checked against direct summation.

#include <cstdio>

#include "lapsum/lapsum.hpp"

int main() {
    using namespace lapsum;
    for (double z : {2.0, 3.0, 4.0}) {
        const SummandSpec spec = make_summand(Family::power, {.z = z});
        const SeriesProblem p = make_problem(spec, KernelTag::base, 1.0);
        const EvalReport r = cross_validate(p);
        std::printf("zeta(%g) = %.16f  err %.1e  oracle gap %.1e  [%s]\n", z, r.value.real(), r.err_est,
                    r.oracle_gap.value_or(-1.0), r.verdict.value_or(false) ? "PASS" : "FAIL");
    }

    // cos k summed against the base kernel lands on the point-mass path
    const SeriesProblem c = make_problem(make_summand(Family::cosine, {}), KernelTag::base, 2.0);
    const EvalReport rc = evaluate_series(c);
    std::printf("sum cos(2k) = %.16f via %s\n", rc.value.real(), std::string(path_name(rc.path)).c_str());
    return 0;
}
