#include "l3cvrp/cuts.hpp"

#include <algorithm>
#include <set>

namespace l3cvrp {

std::string to_string(CutKind kind)
{
    switch (kind)
    {
        case CutKind::Gsec:
            return "GSEC";
        case CutKind::RoundedCapacity:
            return "RCI";
        case CutKind::TwoPath:
            return "2P";
        case CutKind::TwoPathTail:
            return "2PT";
        case CutKind::Tournament:
            return "RT";
        case CutKind::TailTournament:
            return "TT";
        case CutKind::UndirectedPath:
            return "UIP";
        case CutKind::UndirectedTailPath:
            return "UITP";
        case CutKind::InfeasibleTailPath:
            return "ITP";
        case CutKind::InfeasiblePath:
            return "IRP";
        case CutKind::InfeasibleRoute:
            return "IR";
    }
    return "?";
}

namespace {

std::vector<int> customers_of(std::span<const int> path)
{
    std::vector<int> p(path.begin(), path.end());
    while (!p.empty() && p.back() == 0)
        p.pop_back();
    return p;
}

}  // namespace

ArcValues route_incidence(std::span<const std::vector<int>> routes, int numNodes)
{
    ArcValues x = ArcValues::Zero(numNodes, numNodes);
    for (const auto& r : routes)
    {
        if (r.empty())
            continue;
        x(0, r.front()) += 1.0;
        for (size_t k = 1; k < r.size(); ++k)
            x(r[k - 1], r[k]) += 1.0;
        x(r.back(), 0) += 1.0;
    }
    return x;
}

CutExpr gsec(std::span<const int> s, int r, CutKind kind)
{
    CutExpr c;
    c.kind = kind;
    for (int i : s)
        for (int j : s)
            if (i != j)
                c.terms.push_back({i, j, 1.0});
    c.rhs = static_cast<double>(s.size()) - r;
    return c;
}

CutExpr two_path(std::span<const int> s) { return gsec(s, 2, CutKind::TwoPath); }

CutExpr two_path_tail(std::span<const int> s, int numCustomers)
{
    CutExpr c = gsec(s, 2, CutKind::TwoPathTail);
    std::set<int> in(s.begin(), s.end());
    for (int i : s)
        for (int j = 1; j <= numCustomers; ++j)
            if (!in.count(j))
            {
                c.terms.push_back({i, j, -1.0});
                c.terms.push_back({j, i, -1.0});
            }
    return c;
}

CutExpr tournament(std::span<const int> path)
{
    const auto p = customers_of(path);
    CutExpr c;
    c.kind = CutKind::Tournament;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            c.terms.push_back({p[i], p[j], 1.0});
    c.rhs = static_cast<double>(p.size()) - 2.0;
    return c;
}

CutExpr undirected_infeasible_path(std::span<const int> path)
{
    const auto p = customers_of(path);
    CutExpr c;
    c.kind = CutKind::UndirectedPath;
    for (size_t k = 1; k < p.size(); ++k)
    {
        c.terms.push_back({p[k - 1], p[k], 1.0});
        c.terms.push_back({p[k], p[k - 1], 1.0});
    }
    c.rhs = static_cast<double>(p.size()) - 2.0;
    return c;
}

CutExpr tail_tournament(std::span<const int> path)
{
    const auto p = customers_of(path);
    CutExpr c;
    c.kind = CutKind::TailTournament;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            c.terms.push_back({p[i], p[j], 1.0});
    for (int i : p)
        c.terms.push_back({i, 0, 0.5});
    c.rhs = static_cast<double>(p.size()) - 1.0;
    return c;
}

CutExpr undirected_tail_path(std::span<const int> path)
{
    const auto p = customers_of(path);
    CutExpr c;
    c.kind = CutKind::UndirectedTailPath;
    for (size_t k = 1; k < p.size(); ++k)
    {
        c.terms.push_back({p[k - 1], p[k], 1.0});
        c.terms.push_back({p[k], p[k - 1], 1.0});
    }
    for (int i : p)
        c.terms.push_back({i, 0, 0.5});
    c.rhs = static_cast<double>(p.size()) - 1.0;
    return c;
}

CutExpr infeasible_tail_path(std::span<const int> path)
{
    const auto p = customers_of(path);
    CutExpr c;
    c.kind = CutKind::InfeasibleTailPath;
    for (size_t k = 1; k < p.size(); ++k)
        c.terms.push_back({p[k - 1], p[k], 1.0});
    if (!p.empty())
        c.terms.push_back({p.back(), 0, 1.0});
    c.rhs = static_cast<double>(p.size()) - 1.0;
    return c;
}

CutExpr infeasible_path(std::span<const int> path)
{
    const auto p = customers_of(path);
    CutExpr c;
    c.kind = CutKind::InfeasiblePath;
    for (size_t k = 1; k < p.size(); ++k)
        c.terms.push_back({p[k - 1], p[k], 1.0});
    c.rhs = static_cast<double>(p.size()) - 2.0;
    return c;
}

CutExpr infeasible_route(std::span<const int> route)
{
    const auto p = customers_of(route);
    CutExpr c;
    c.kind = CutKind::InfeasibleRoute;
    if (p.empty())
        return c;
    c.terms.push_back({0, p.front(), 1.0});
    for (size_t k = 1; k < p.size(); ++k)
        c.terms.push_back({p[k - 1], p[k], 1.0});
    c.terms.push_back({p.back(), 0, 1.0});
    c.rhs = static_cast<double>(c.terms.size()) - 1.0;
    return c;
}

CutExpr restrict_to(CutExpr cut, const std::function<bool(int, int)>& exists)
{
    std::erase_if(cut.terms, [&](const ArcTerm& t) { return !exists(t.from, t.to); });
    return cut;
}

std::vector<CutExpr> separate_rounded_capacity(const ArcValues& x, const Instance& instance, double eps)
{
    const int n = instance.num_customers();
    Eigen::MatrixXd w = x + x.transpose();
    std::set<std::vector<int>> tried;
    std::vector<CutExpr> cuts;

    auto consider = [&](std::vector<int> s) {
        if (s.size() < 2)
            return;
        std::sort(s.begin(), s.end());
        if (!tried.insert(s).second)
            return;
        const int r = required_vehicles(instance, s);
        double inside = 0.0;
        for (int i : s)
            for (int j : s)
                if (i != j)
                    inside += x(i, j);
        if (inside > static_cast<double>(s.size()) - r + eps)
            cuts.push_back(gsec(s, r, CutKind::RoundedCapacity));
    };

    for (int step = 0; step <= 9; ++step)
    {
        const double threshold = step == 0 ? eps : 0.1 * step;
        std::vector<int> comp(n + 1, -1);
        int next = 0;
        for (int s = 1; s <= n; ++s)
        {
            if (comp[s] >= 0)
                continue;
            std::vector<int> stack{s}, members;
            comp[s] = next;
            while (!stack.empty())
            {
                const int u = stack.back();
                stack.pop_back();
                members.push_back(u);
                for (int v = 1; v <= n; ++v)
                    if (comp[v] < 0 && w(u, v) >= threshold)
                    {
                        comp[v] = next;
                        stack.push_back(v);
                    }
            }
            ++next;
            consider(members);
        }
    }

    for (int seed = 1; seed <= n; ++seed)
    {
        std::vector<int> s{seed};
        std::vector<char> in(n + 1, 0);
        in[seed] = 1;
        while (static_cast<int>(s.size()) < n)
        {
            int best = -1;
            double gain = 0.0;
            for (int v = 1; v <= n; ++v)
            {
                if (in[v])
                    continue;
                double g = 0.0;
                for (int u : s)
                    g += w(u, v);
                if (g > gain + 1e-12)
                {
                    gain = g;
                    best = v;
                }
            }
            if (best < 0)
                break;
            in[best] = 1;
            s.push_back(best);
            consider(s);
        }
    }
    return cuts;
}

}  // namespace l3cvrp
