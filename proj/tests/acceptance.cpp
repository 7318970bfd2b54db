// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <string>

#include "polymatroid/cli.hpp"
#include "polymatroid/suite.hpp"

namespace {

bool report(const polymatroid::suite::CriterionResult& r, double seconds) {
    std::printf("%s [%2d] %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(), seconds);
    std::fflush(stdout);
    return r.pass;
}

}  // namespace

int main() {
    using namespace polymatroid;
    using clock = std::chrono::steady_clock;
    const suite::Options opt;
    auto t0 = clock::now();
    auto elapsed = [&] {
        const auto now = clock::now();
        const double s = std::chrono::duration<double>(now - t0).count();
        t0 = now;
        return s;
    };

    const suite::Corpus corpus(opt);
    elapsed();
    bool ok = true;
    {
        const auto r = suite::hall_rado_vs_cascade(corpus);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::volume_equals_egf(corpus);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::rado_matching_iff_hall_rado(corpus);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::lift_identities(corpus);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::fan_checks(corpus, opt);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::hpoly_identity();
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::dragon_hall_rado(corpus);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::valuativity(corpus, opt);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::cube_cells(corpus);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::realization(opt);
        ok &= report(r, elapsed());
    }
    {
        const auto r = suite::normalization();
        ok &= report(r, elapsed());
    }

    suite::CriterionResult golden{12, "command-line golden files replay byte-exactly", true, ""};
    const auto g = cli::golden_check(GOLDEN_DIR);
    golden.pass = g.failures.empty() && g.passed > 0;
    golden.detail = std::to_string(g.passed) + " cases passed";
    for (const auto& f : g.failures) golden.detail += ", failed " + f;
    ok &= report(golden, elapsed());

    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return ok ? 0 : 1;
}
