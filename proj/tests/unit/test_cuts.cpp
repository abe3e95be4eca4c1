#include "doctest.h"

#include "l3cvrp/cuts.hpp"

#include "../support/generators.hpp"

using namespace l3cvrp;

namespace {

ArcValues routes_x(std::vector<std::vector<int>> routes, int nodes) { return route_incidence(routes, nodes); }

}  // namespace

TEST_CASE("kind names")
{
    CHECK(to_string(CutKind::TwoPathTail) == "2PT");
    CHECK(to_string(CutKind::UndirectedTailPath) == "UITP");
    CHECK(to_string(CutKind::InfeasibleRoute) == "IR");
}

TEST_CASE("route incidence counts depot arcs")
{
    auto x = routes_x({{1, 2}, {3}}, 4);
    CHECK(x(0, 1) == 1);
    CHECK(x(1, 2) == 1);
    CHECK(x(2, 0) == 1);
    CHECK(x(0, 3) == 1);
    CHECK(x(3, 0) == 1);
    CHECK(x.sum() == 5);
}

TEST_CASE("tail tournament and undirected tail path on a four customer route")
{
    const std::vector<int> p{1, 2, 3, 4};
    const auto tt = tail_tournament(p);
    const auto uitp = undirected_tail_path(p);
    CHECK(tt.rhs == 3);
    CHECK(uitp.rhs == 3);
    CHECK(tt.terms.size() == 6 + 4);
    CHECK(uitp.terms.size() == 6 + 4);

    const auto whole = routes_x({{1, 2, 3, 4}}, 5);
    CHECK(lhs(tt, whole) == doctest::Approx(3.5));
    CHECK(lhs(uitp, whole) == doctest::Approx(3.5));

    const auto split = routes_x({{1, 2}, {3, 4}}, 5);
    CHECK(lhs(tt, split) == doctest::Approx(3.0));
    CHECK(lhs(uitp, split) == doctest::Approx(3.0));

    // the reversed route only violates the undirected form
    const auto back = routes_x({{4, 3, 2, 1}}, 5);
    CHECK(violation(tt, back) <= 0.0);
    CHECK(violation(uitp, back) > 0.0);

    // the path inside a longer route that does not end at the depot
    const auto inside = routes_x({{1, 2, 3, 4, 5}}, 6);
    CHECK(violation(tail_tournament(p), inside) <= 0.0);
    CHECK(violation(infeasible_path(p), inside) > 0.0);
}

TEST_CASE("trailing depot is ignored in paths")
{
    const std::vector<int> a{2, 3, 0};
    const std::vector<int> b{2, 3};
    CHECK(infeasible_tail_path(a).terms.size() == infeasible_tail_path(b).terms.size());
    CHECK(infeasible_tail_path(a).rhs == 1);
}

TEST_CASE("two path tail only counts routes made exactly of S")
{
    const std::vector<int> s{1, 2};
    const auto cut = two_path_tail(s, 4);
    CHECK(cut.rhs == 0);
    CHECK(violation(cut, routes_x({{1, 2}}, 5)) > 0);
    CHECK(violation(cut, routes_x({{2, 1}}, 5)) > 0);
    CHECK(violation(cut, routes_x({{1, 2, 3}}, 5)) <= 0);
    CHECK(violation(cut, routes_x({{3, 1, 2, 4}}, 5)) <= 0);
    CHECK(violation(cut, routes_x({{1}, {2}}, 5)) <= 0);
}

TEST_CASE("tournament and infeasible route")
{
    const std::vector<int> p{3, 1, 2};
    const auto rt = tournament(p);
    CHECK(rt.rhs == 1);
    CHECK(violation(rt, routes_x({{3, 1, 2}}, 4)) > 0);
    CHECK(violation(rt, routes_x({{5, 3, 1, 2, 4}}, 6)) > 0);
    CHECK(violation(rt, routes_x({{2, 1, 3}}, 4)) <= 0);

    const auto ir = infeasible_route(p);
    CHECK(ir.terms.size() == 4);
    CHECK(ir.rhs == 3);
    CHECK(violation(ir, routes_x({{3, 1, 2}}, 4)) > 0);
    CHECK(violation(ir, routes_x({{3, 1, 2, 4}}, 5)) <= 0);
}

TEST_CASE("restriction drops removed arcs")
{
    const std::vector<int> p{1, 2, 3};
    auto cut = restrict_to(infeasible_path(p), [](int i, int j) { return !(i == 1 && j == 2); });
    CHECK(cut.terms.size() == 1);
    CHECK(cut.rhs == 1);
}

TEST_CASE("rounded capacity separation finds a subtour")
{
    std::mt19937_64 rng(3);
    testing::RandomInstanceShape shape;
    shape.customers = 5;
    auto inst = testing::random_instance(rng, shape, "rci");
    // 1-2-3 cycle off the depot, 4 and 5 served directly
    ArcValues x = ArcValues::Zero(6, 6);
    x(1, 2) = x(2, 3) = x(3, 1) = 1;
    x(0, 4) = x(4, 0) = x(0, 5) = x(5, 0) = 1;
    auto cuts = separate_rounded_capacity(x, inst);
    REQUIRE_FALSE(cuts.empty());
    bool found = false;
    for (const auto& c : cuts)
    {
        CHECK(violation(c, x) > 0);
        int inside = 0;
        for (const auto& t : c.terms)
            inside += (t.from >= 1 && t.from <= 3 && t.to >= 1 && t.to <= 3);
        found = found || (inside == 6 && c.terms.size() == 6);
    }
    CHECK(found);

    // a feasible set of single customer routes is not cut
    ArcValues y = ArcValues::Zero(6, 6);
    for (int i = 1; i <= 5; ++i)
        y(0, i) = y(i, 0) = 1;
    CHECK(separate_rounded_capacity(y, inst).empty());
}
