// Benchmark of the parallel kernels against their serial reference
// implementations: circle sampling, Duhamel panel accumulation, Monte
// Carlo condition batches and graded-mesh quadrature. Both paths must
// produce identical results; only the wall time differs.

#include <chrono>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "eigensum/bounds.hpp"
#include "eigensum/conditions.hpp"
#include "eigensum/grid.hpp"
#include "eigensum/jensen.hpp"
#include "eigensum/semigroup.hpp"

using namespace eigensum;

namespace {

template <typename Fn>
double time_of(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-26s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n",
                name, serial, parallel, serial / parallel,
                identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());

    // one mid-size periodic well drives the matrix kernels
    grid::GridSpec g{1, 10.0, 128, grid::Boundary::periodic, false};
    pot::PotentialSpec v(1, {pot::Gaussian{-3.0, {0.0}, 1.2}});
    const auto a = grid::build_laplacian(g);
    const auto b = grid::assemble(g, v, grid::PotentialPart::minus_only);
    const double t = jensen::default_time_step(a.matrix);

    {
        const auto dt = semigroup::semigroup_difference(a.matrix, b.matrix, t);
        jensen::Engine engine(a.matrix, dt, t);
        jensen::JensenEvaluation es, ep;
        const double ts = time_of(
            [&] { es = jensen::jensen_circle_serial(engine, 0.96875, 2048); });
        const double tp =
            time_of([&] { ep = jensen::jensen_circle(engine, 0.96875, 2048); });
        report("circle sampling", ts, tp,
               es.samples == ep.samples && es.winding == ep.winding);
    }

    {
        semigroup::SemigroupDifference ds, dp;
        const double ts = time_of([&] {
            ds = semigroup::duhamel_difference_serial(a.matrix, b.matrix, 0.1,
                                                      4096);
        });
        const double tp = time_of([&] {
            dp = semigroup::duhamel_difference(a.matrix, b.matrix, 0.1, 4096);
        });
        report("duhamel panels", ts, tp, ds.kernel == dp.kernel);
    }

    {
        pot::PotentialSpec g5(5, {pot::Gaussian{-1.0, {0, 0, 0, 0, 0}, 1.0}});
        cond::RefinementSchedule sched;
        sched.samples = 1 << 18;
        cond::ConditionReport rs, rp;
        const double ts = time_of([&] {
            rs = cond::condition_integral(g5, cond::ConditionId::cond0, 1.0,
                                          sched, 7, 1);
        });
        const double tp = time_of([&] {
            rp = cond::condition_integral(g5, cond::ConditionId::cond0, 1.0,
                                          sched, 7, 0);
        });
        bool same = rs.estimates.size() == rp.estimates.size();
        for (std::size_t i = 0; same && i < rs.estimates.size(); ++i) {
            same = rs.estimates[i].value == rp.estimates[i].value;
        }
        report("mc condition batches", ts, tp, same);
    }

    {
        double ms = 0, mp = 0;
        const bounds::MzQuery q{5, 1.0, {1.0 - 1e-9, 0.0}};
        const double ts = time_of([&] { ms = bounds::m_z_serial(q); });
        const double tp = time_of([&] { mp = bounds::m_z(q); });
        report("graded quadrature", ts, tp, ms == mp);
    }

    return 0;
}
