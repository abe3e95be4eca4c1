#include "doctest.h"

#include "l3cvrp/dual_simplex.hpp"

#include <optional>
#include <random>

using namespace l3cvrp::lp;
using Simplex = DualSimplex<double>;

namespace {

struct SmallLp
{
    Eigen::VectorXd c, lo, up;
    Eigen::MatrixXd a;
    Eigen::VectorXd rlo, rup;
};

/// Minimum over all vertices: every choice of n tight constraints.
std::optional<double> vertex_enumeration(const SmallLp& lp)
{
    const int n = static_cast<int>(lp.c.size());
    const int m = static_cast<int>(lp.a.rows());
    std::vector<std::pair<Eigen::RowVectorXd, double>> planes;
    for (int j = 0; j < n; ++j)
    {
        Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
        e(j) = 1;
        planes.emplace_back(e, lp.lo(j));
        planes.emplace_back(e, lp.up(j));
    }
    for (int r = 0; r < m; ++r)
    {
        if (std::isfinite(lp.rlo(r)))
            planes.emplace_back(lp.a.row(r), lp.rlo(r));
        if (std::isfinite(lp.rup(r)))
            planes.emplace_back(lp.a.row(r), lp.rup(r));
    }
    std::optional<double> best;
    const int p = static_cast<int>(planes.size());
    std::vector<int> pick(n);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == n)
        {
            Eigen::MatrixXd M(n, n);
            Eigen::VectorXd b(n);
            for (int k = 0; k < n; ++k)
            {
                M.row(k) = planes[pick[k]].first;
                b(k) = planes[pick[k]].second;
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            if (lu.rank() < n)
                return;
            Eigen::VectorXd x = lu.solve(b);
            for (int j = 0; j < n; ++j)
                if (x(j) < lp.lo(j) - 1e-7 || x(j) > lp.up(j) + 1e-7)
                    return;
            Eigen::VectorXd ax = lp.a * x;
            for (int r = 0; r < m; ++r)
                if (ax(r) < lp.rlo(r) - 1e-7 || ax(r) > lp.rup(r) + 1e-7)
                    return;
            const double v = lp.c.dot(x);
            if (!best || v < *best)
                best = v;
            return;
        }
        for (int k = start; k < p; ++k)
        {
            pick[depth] = k;
            self(self, k + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return best;
}

SmallLp random_lp(std::mt19937_64& rng, int n, int m)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> kind(0, 2);
    SmallLp lp;
    lp.c.resize(n);
    lp.lo = Eigen::VectorXd::Zero(n);
    lp.up.resize(n);
    for (int j = 0; j < n; ++j)
    {
        lp.c(j) = coef(rng);
        lp.up(j) = 1 + (coef(rng) + 3) % 3;
    }
    lp.a.resize(m, n);
    lp.rlo.resize(m);
    lp.rup.resize(m);
    for (int r = 0; r < m; ++r)
    {
        for (int j = 0; j < n; ++j)
            lp.a(r, j) = coef(rng);
        const double b = coef(rng);
        switch (kind(rng))
        {
            case 0:
                lp.rlo(r) = -INFINITY;
                lp.rup(r) = b;
                break;
            case 1:
                lp.rlo(r) = b;
                lp.rup(r) = INFINITY;
                break;
            default:
                lp.rlo(r) = b - 1;
                lp.rup(r) = b + 1;
        }
    }
    return lp;
}

std::vector<std::vector<Simplex::Term>> rows_of(const Eigen::MatrixXd& a)
{
    std::vector<std::vector<Simplex::Term>> rows(a.rows());
    for (int r = 0; r < a.rows(); ++r)
        for (int j = 0; j < a.cols(); ++j)
            if (a(r, j) != 0)
                rows[r].emplace_back(j, a(r, j));
    return rows;
}

}  // namespace

TEST_CASE("dual simplex matches vertex enumeration")
{
    std::mt19937_64 rng(17);
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 400; ++trial)
    {
        const int n = 1 + trial % 4;
        const int m = 1 + (trial / 4) % 4;
        auto lp = random_lp(rng, n, m);
        Simplex s(lp.c, lp.lo, lp.up);
        s.add_rows(rows_of(lp.a), std::vector<double>(lp.rlo.data(), lp.rlo.data() + m),
                   std::vector<double>(lp.rup.data(), lp.rup.data() + m));
        auto st = s.solve();
        auto truth = vertex_enumeration(lp);
        INFO("trial " << trial);
        REQUIRE(st != LpStatus::IterationLimit);
        CHECK((st == LpStatus::Optimal) == truth.has_value());
        if (truth && st == LpStatus::Optimal)
        {
            CHECK(s.objective() == doctest::Approx(*truth).epsilon(1e-7));
            Eigen::VectorXd x = s.primal();
            Eigen::VectorXd ax = lp.a * x;
            for (int r = 0; r < m; ++r)
            {
                CHECK(ax(r) >= lp.rlo(r) - 1e-7);
                CHECK(ax(r) <= lp.rup(r) + 1e-7);
            }
            ++feasible;
        }
        else
            ++infeasible;
    }
    CHECK(feasible > 100);
    CHECK(infeasible > 20);
}

TEST_CASE("warm starts after new rows and bound changes")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial)
    {
        const int n = 3 + trial % 2;
        auto lp = random_lp(rng, n, 4);
        Simplex warm(lp.c, lp.lo, lp.up);
        auto rows = rows_of(lp.a);
        warm.add_rows({rows[0], rows[1]}, {lp.rlo(0), lp.rlo(1)}, {lp.rup(0), lp.rup(1)});
        warm.solve();
        warm.add_rows({rows[2], rows[3]}, {lp.rlo(2), lp.rlo(3)}, {lp.rup(2), lp.rup(3)});
        warm.set_bounds(0, 0, 0);
        auto st = warm.solve();

        SmallLp fixed = lp;
        fixed.up(0) = 0;
        auto truth = vertex_enumeration(fixed);
        INFO("trial " << trial);
        CHECK((st == LpStatus::Optimal) == truth.has_value());
        if (truth && st == LpStatus::Optimal)
            CHECK(warm.objective() == doctest::Approx(*truth).epsilon(1e-7));

        warm.set_bounds(0, lp.lo(0), lp.up(0));
        st = warm.solve();
        auto full = vertex_enumeration(lp);
        CHECK((st == LpStatus::Optimal) == full.has_value());
        if (full && st == LpStatus::Optimal)
            CHECK(warm.objective() == doctest::Approx(*full).epsilon(1e-7));
    }
}

TEST_CASE("refactoring keeps the solution")
{
    std::mt19937_64 rng(29);
    auto lp = random_lp(rng, 4, 3);
    lp.rlo.setConstant(-INFINITY);
    lp.rup.setConstant(5);
    Simplex s(lp.c, lp.lo, lp.up);
    s.add_rows(rows_of(lp.a), {-INFINITY, -INFINITY, -INFINITY}, {5, 5, 5});
    REQUIRE(s.solve() == LpStatus::Optimal);
    const double before = s.objective();
    s.Refactor();
    REQUIRE(s.solve() == LpStatus::Optimal);
    CHECK(s.objective() == doctest::Approx(before));
}
