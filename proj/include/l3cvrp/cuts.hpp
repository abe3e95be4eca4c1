#pragma once

#include "l3cvrp/instance.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace l3cvrp {

enum class CutKind
{
    Gsec,
    RoundedCapacity,
    TwoPath,
    TwoPathTail,
    Tournament,
    TailTournament,
    UndirectedPath,
    UndirectedTailPath,
    InfeasibleTailPath,
    InfeasiblePath,
    InfeasibleRoute
};

std::string to_string(CutKind kind);

struct ArcTerm
{
    int from;
    int to;
    double coef;
};

/// sum(coef * x[from][to]) <= rhs
struct CutExpr
{
    CutKind kind = CutKind::Gsec;
    std::vector<ArcTerm> terms;
    double rhs = 0.0;
};

/// Arc values as a dense (n+1) x (n+1) matrix, depot at index 0.
using ArcValues = Eigen::MatrixXd;

template <typename Derived>
double lhs(const CutExpr& cut, const Eigen::MatrixBase<Derived>& x)
{
    double v = 0.0;
    for (const auto& t : cut.terms)
        v += t.coef * x(t.from, t.to);
    return v;
}

template <typename Derived>
double violation(const CutExpr& cut, const Eigen::MatrixBase<Derived>& x)
{
    return lhs(cut, x) - cut.rhs;
}

/// Incidence matrix of depot routes (customer sequences).
ArcValues route_incidence(std::span<const std::vector<int>> routes, int numNodes);

/// Arcs inside S at most |S| - r.
CutExpr gsec(std::span<const int> s, int r, CutKind kind = CutKind::Gsec);
CutExpr two_path(std::span<const int> s);
/// Arcs inside S count +1, arcs between S and the other customers count -1.
CutExpr two_path_tail(std::span<const int> s, int numCustomers);

/// The path arguments list customers in visiting order; a trailing depot is ignored.
CutExpr tournament(std::span<const int> path);
CutExpr undirected_infeasible_path(std::span<const int> path);
CutExpr tail_tournament(std::span<const int> path);
CutExpr undirected_tail_path(std::span<const int> path);
CutExpr infeasible_tail_path(std::span<const int> path);
CutExpr infeasible_path(std::span<const int> path);
CutExpr infeasible_route(std::span<const int> route);

/// Drops terms on arcs for which `exists` is false; those arcs are fixed at zero.
CutExpr restrict_to(CutExpr cut, const std::function<bool(int, int)>& exists);

/// Rounded capacity inequalities violated by more than `eps` at `x`.
std::vector<CutExpr> separate_rounded_capacity(const ArcValues& x, const Instance& instance, double eps = 1e-6);

}  // namespace l3cvrp
