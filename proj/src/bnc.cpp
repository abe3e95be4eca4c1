#include "l3cvrp/bnc.hpp"

#include "l3cvrp/dual_simplex.hpp"
#include "l3cvrp/timing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace l3cvrp {

SeparationMode separation_schedule(long node, const BncConfig& config)
{
    if (node <= config.n_all)
        return SeparationMode::All;
    if (config.n_sep > 0 && node % config.n_sep == 0)
        return SeparationMode::Sequential;
    return SeparationMode::Skip;
}

int most_fractional(std::span<const double> x, std::span<const double> cost, double tol)
{
    int best = -1;
    double frac = tol;
    for (int j = 0; j < static_cast<int>(x.size()); ++j)
    {
        const double d = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
        if (d <= tol)
            continue;
        const bool tie = best >= 0 && std::abs(d - frac) <= 1e-12;
        if (best < 0 || (!tie && d > frac) || (tie && cost[j] > cost[best] + 1e-12))
        {
            best = j;
            frac = d;
        }
    }
    if (best < 0)
        throw std::logic_error("branching on an integral point");
    return best;
}

namespace {

using Simplex = lp::DualSimplex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Fixing
{
    int col;
    double value;
};

struct Node
{
    double bound = -kInf;
    long order = 0;
    std::vector<Fixing> fixings;
};

struct WorseBound
{
    bool operator()(const Node& a, const Node& b) const
    {
        return a.bound > b.bound || (a.bound == b.bound && a.order > b.order);
    }
};

double required_violation(CutKind kind)
{
    return (kind == CutKind::TailTournament || kind == CutKind::UndirectedTailPath ? 0.5 : 1.0) - 1e-9;
}

class Engine
{
  public:
    Engine(const Instance& instance, ProblemVariant variant, const BncConfig& config, std::vector<CutRecord>* ledger)
        : mInstance(instance), mConfig(config), mLedger(ledger),
          mDeadline(Deadline::after(TimeBudget::seconds(config.time_limit))),
          mPipeline(instance, variant, PipelineFor(config), mRoutes, mCombos, mDeadline)
    {
        mReport.instance = instance.name;
        mReport.variant = to_string(variant);
    }

    SolutionReport Run()
    {
        try
        {
            Setup();
            Search();
        }
        catch (const TimeLimitReached&)
        {
            mFinished = false;
        }
        return Finish();
    }

  private:
    enum class Outcome
    {
        Closed,
        Branch
    };

    static PipelineConfig PipelineFor(const BncConfig& c)
    {
        PipelineConfig p = c.pipeline;
        p.complete = c.complete;
        p.memo = c.memo && c.complete;
        p.support_ratio = c.support_ratio;
        p.seed = c.seed;
        return p;
    }

    int Customers() const { return mInstance.num_customers(); }
    bool Exists(int i, int j) const { return mColOf(i, j) >= 0; }

    void Setup()
    {
        const int n = Customers();
        const int nodes = n + 1;
        mReport.stats.k_min = minimum_vehicles(mInstance);

        Stopwatch pre;
        const auto prep = mPipeline.preprocess();
        mReport.stats.t_preprocess = pre.elapsed();
        mReport.stats.removed_arcs = prep.removed_count;

        mColOf = Eigen::MatrixXi::Constant(nodes, nodes, -1);
        for (int i = 0; i < nodes; ++i)
            for (int j = 0; j < nodes; ++j)
                if (i != j && (i == 0 || j == 0 || !prep.removed[i][j]))
                {
                    mColOf(i, j) = static_cast<int>(mArcs.size());
                    mArcs.emplace_back(i, j);
                    mCost.push_back(mInstance.cost(i, j));
                }
        const int m = static_cast<int>(mArcs.size());
        Eigen::VectorXd cost = Eigen::Map<const Eigen::VectorXd>(mCost.data(), m);
        mLp.emplace(cost, Eigen::VectorXd::Zero(m), Eigen::VectorXd::Ones(m));

        std::vector<std::vector<Simplex::Term>> rows;
        std::vector<double> lo, up;
        for (int i = 1; i <= n; ++i)
        {
            std::vector<Simplex::Term> out, in;
            for (int j = 0; j < nodes; ++j)
            {
                if (Exists(i, j))
                    out.emplace_back(mColOf(i, j), 1.0);
                if (Exists(j, i))
                    in.emplace_back(mColOf(j, i), 1.0);
            }
            rows.push_back(std::move(out));
            rows.push_back(std::move(in));
            lo.insert(lo.end(), {1.0, 1.0});
            up.insert(up.end(), {1.0, 1.0});
        }
        std::vector<Simplex::Term> depot;
        for (int j = 1; j <= n; ++j)
            depot.emplace_back(mColOf(0, j), 1.0);
        rows.push_back(std::move(depot));
        lo.push_back(mReport.stats.k_min);
        up.push_back(mInstance.vehicle.count);

        mLazyPairs = n > mConfig.static_pair_rows;
        if (!mLazyPairs)
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    if (Exists(i, j) && Exists(j, i))
                    {
                        rows.push_back({{mColOf(i, j), 1.0}, {mColOf(j, i), 1.0}});
                        lo.push_back(-kInf);
                        up.push_back(1.0);
                    }
        mLp->add_rows(rows, lo, up);

        for (const auto& g : prep.cuts)
            EmitRouteCut(g);

        if (mConfig.complete)
        {
            if (auto plan = savings_solution(mInstance, mPipeline, mDeadline);
                plan && static_cast<int>(plan->routes.size()) <= mInstance.vehicle.count)
                Improve(plan->routes);
        }
        mSpMark = mRoutes.size();
    }

    void Search()
    {
        std::priority_queue<Node, std::vector<Node>, WorseBound> open;
        std::optional<Node> next = Node{};
        std::vector<Fixing> applied;
        long created = 1;

        while (next || !open.empty())
        {
            Node node;
            if (next)
            {
                node = std::move(*next);
                next.reset();
            }
            else
            {
                node = open.top();
                open.pop();
            }
            const double frontier = open.empty() ? node.bound : std::min(node.bound, open.top().bound);
            mLowerBound = std::max(mLowerBound, std::min(frontier, mUpperBound));
            if (node.bound >= mUpperBound - mConfig.prune_tolerance)
                continue;
            if (mDeadline.expired())
                throw TimeLimitReached();

            for (const auto& f : applied)
                mLp->set_bounds(f.col, 0.0, 1.0);
            for (const auto& f : node.fixings)
                mLp->set_bounds(f.col, f.value, f.value);
            applied = node.fixings;

            ++mReport.stats.nodes;
            int col = -1;
            double bound = 0.0;
            const Outcome o = Process(col, bound);
            if (mReport.stats.nodes == 1)
                mReport.stats.root_bound = bound;
            MaybeRunSp();
            if (o == Outcome::Closed)
                continue;

            Node down{bound, created++, node.fixings};
            down.fixings.push_back({col, 0.0});
            Node upChild{bound, created++, std::move(node.fixings)};
            upChild.fixings.push_back({col, 1.0});
            open.push(std::move(down));
            next = std::move(upChild);
        }
        mFinished = true;
    }

    /// Solves the node LP with cuts until it is pruned, integral and accepted, or needs branching.
    Outcome Process(int& col, double& bound)
    {
        bound = -kInf;
        int rounds = 0;
        while (true)
        {
            const auto st = mLp->solve();
            if (st == lp::LpStatus::IterationLimit)
                throw OracleFailure("LP iteration limit at node " + std::to_string(mReport.stats.nodes));
            if (st == lp::LpStatus::Infeasible)
                return Outcome::Closed;
            bound = mLp->objective();
            if (bound >= mUpperBound - mConfig.prune_tolerance)
                return Outcome::Closed;
            if (mDeadline.expired())
                throw TimeLimitReached();

            const Eigen::VectorXd xv = mLp->primal();
            std::vector<double> x(xv.data(), xv.data() + xv.size());
            const ArcValues X = ArcMatrix(x);
            const bool fractional = std::any_of(x.begin(), x.end(), [&](double v) {
                return std::min(v, 1.0 - v) > mConfig.integrality_tolerance;
            });

            if (!fractional)
            {
                Stopwatch t;
                const bool cut = IntegerCallback(X);
                mReport.stats.t_int += t.elapsed();
                if (cut)
                    continue;
                return Outcome::Closed;
            }

            if (rounds < mConfig.max_cut_rounds)
            {
                Stopwatch t;
                int added = mLazyPairs ? SeparatePairs(X) : 0;
                if (added == 0 && mConfig.complete)
                    added = FractionalCallback(X);
                mReport.stats.t_frac += t.elapsed();
                if (added > 0)
                {
                    ++rounds;
                    continue;
                }
            }
            col = most_fractional(x, mCost, mConfig.integrality_tolerance);
            return Outcome::Branch;
        }
    }

    ArcValues ArcMatrix(const std::vector<double>& x) const
    {
        ArcValues X = ArcValues::Zero(Customers() + 1, Customers() + 1);
        for (size_t k = 0; k < mArcs.size(); ++k)
            X(mArcs[k].first, mArcs[k].second) = std::clamp(x[k], 0.0, 1.0);
        return X;
    }

    int SeparatePairs(const ArcValues& X)
    {
        int added = 0;
        for (int i = 1; i <= Customers(); ++i)
            for (int j = i + 1; j <= Customers(); ++j)
                if (X(i, j) + X(j, i) > 1.0 + 1e-6)
                {
                    const std::vector<int> s{i, j};
                    const CutExpr cut = gsec(s, 1);
                    added += Emit(cut, {}, true, violation(cut, X));
                }
        return added;
    }

    int FractionalCallback(const ArcValues& X)
    {
        const auto mode = separation_schedule(mReport.stats.nodes, mConfig);
        if (mode == SeparationMode::Skip)
            return 0;
        int added = 0;
        // rounded capacity inequalities are the only fractional family
        for (const auto& cut : separate_rounded_capacity(X, mInstance))
            added += Emit(cut, {}, true, violation(cut, X));
        return added;
    }

    /// Returns true when the solution was rejected and cuts were added.
    bool IntegerCallback(const ArcValues& X)
    {
        ++mReport.stats.integer_callbacks;
        const int n = Customers();
        std::vector<int> succ(n + 1, -1);
        for (int i = 1; i <= n; ++i)
            for (int j = 0; j <= n; ++j)
                if (i != j && X(i, j) > 0.5)
                    succ[i] = j;

        std::vector<char> seen(n + 1, 0);
        std::vector<std::vector<int>> routes;
        for (int j = 1; j <= n; ++j)
            if (X(0, j) > 0.5)
            {
                std::vector<int> r;
                for (int v = j; v != 0 && !seen[v]; v = succ[v])
                {
                    seen[v] = 1;
                    r.push_back(v);
                }
                routes.push_back(std::move(r));
            }

        bool rejected = false;
        bool cutOff = false;
        for (int i = 1; i <= n; ++i)
        {
            if (seen[i])
                continue;
            std::vector<int> cycle;
            for (int v = i; v > 0 && !seen[v]; v = succ[v])
            {
                seen[v] = 1;
                cycle.push_back(v);
            }
            rejected = true;
            const CutExpr cut = gsec(cycle, std::max(1, required_vehicles(mInstance, cycle)));
            const double v = violation(cut, X);
            Emit(cut, {}, false, v);
            cutOff = cutOff || v > 1e-6;
        }

        std::vector<Packing> packings;
        for (const auto& r : routes)
        {
            auto res = mPipeline.evaluate(r);
            if (res.accepted)
            {
                packings.push_back(res.packing.value_or(Packing{}));
                continue;
            }
            rejected = true;
            for (const auto& g : res.cuts)
                if (EmitRouteCut(g))
                    cutOff = cutOff || violation(g.cut, X) > 1e-6;
        }
        if (!rejected)
        {
            Improve(routes, packings);
            return false;
        }
        if (!cutOff)
            throw OracleFailure("rejected integer solution was not cut off");
        return true;
    }

    bool EmitRouteCut(const GeneratedCut& g)
    {
        const std::vector<std::vector<int>> trigger{g.route};
        const double v = violation(g.cut, route_incidence(trigger, Customers() + 1));
        if (v < required_violation(g.cut.kind))
            return false;
        return Emit(g.cut, g.route, false, v);
    }

    bool Emit(const CutExpr& cut, std::vector<int> route, bool fractional, double triggerViolation)
    {
        const CutExpr inModel = restrict_to(cut, [&](int i, int j) { return Exists(i, j); });
        if (inModel.terms.empty())
            return false;
        std::vector<std::tuple<int, int, double>> key;
        for (const auto& t : inModel.terms)
            key.emplace_back(t.from, t.to, t.coef);
        std::sort(key.begin(), key.end());
        if (!mCutKeys.emplace(std::move(key), inModel.rhs).second)
            return false;

        std::vector<Simplex::Term> row;
        for (const auto& t : inModel.terms)
            row.emplace_back(mColOf(t.from, t.to), t.coef);
        mLp->add_row(row, -kInf, inModel.rhs);
        mReport.stats.cuts[to_string(cut.kind)]++;
        if (mLedger)
            mLedger->push_back({cut, std::move(route), fractional, triggerViolation});
        return true;
    }

    void Improve(const std::vector<std::vector<int>>& routes, std::vector<Packing> packings = {})
    {
        const double cost = plan_cost(mInstance, routes);
        if (cost >= mUpperBound - 1e-9)
            return;
        if (packings.empty())
            for (const auto& r : routes)
                packings.push_back(mRoutes.packing(r, mPipeline.store_key()).value_or(Packing{}));
        mUpperBound = cost;
        mIncumbent.clear();
        for (size_t k = 0; k < routes.size(); ++k)
            mIncumbent.push_back({routes[k], packings[k].placements});
    }

    void MaybeRunSp()
    {
        if (!mConfig.complete || static_cast<long>(mRoutes.size() - mSpMark) < mConfig.n_sp)
            return;
        mSpMark = mRoutes.size();
        Stopwatch t;
        const auto out = sp_heuristic(mInstance, mPipeline, mRoutes, mUpperBound, mDeadline, mConfig.sp);
        mReport.stats.t_sp += t.elapsed();
        if (out.plan)
            Improve(out.plan->routes);
    }

    SolutionReport Finish()
    {
        auto& s = mReport.stats;
        s.t_total = mClock.elapsed();
        s.routes_stored = static_cast<long>(mRoutes.size());
        s.infeasible_sets = static_cast<long>(mCombos.size());
        s.exact_checks = mPipeline.stats().exact_checks;
        s.heuristic_successes = mPipeline.stats().heuristic_successes;
        s.lp_iterations = mLp ? mLp->iterations() : 0;

        mReport.has_incumbent = !mIncumbent.empty();
        mReport.routes = mIncumbent;
        mReport.objective = mReport.has_incumbent ? mUpperBound : 0.0;
        if (mFinished)
        {
            mReport.status = mReport.has_incumbent ? SolveStatus::Optimal : SolveStatus::Infeasible;
            mLowerBound = mReport.has_incumbent ? mUpperBound : mLowerBound;
        }
        else
            mReport.status = SolveStatus::TimeLimit;
        mReport.lower_bound = std::isfinite(mLowerBound) ? mLowerBound : 0.0;
        if (mReport.has_incumbent)
            mReport.gap = mUpperBound > 0.0 ? std::max(0.0, (mUpperBound - mReport.lower_bound) / mUpperBound) : 0.0;
        return mReport;
    }

    const Instance& mInstance;
    BncConfig mConfig;
    std::vector<CutRecord>* mLedger;
    Stopwatch mClock;
    Deadline mDeadline;
    FeasibleRouteStore mRoutes;
    InfeasibleComboStore mCombos;
    FeasibilityPipeline mPipeline;

    std::vector<std::pair<int, int>> mArcs;
    std::vector<double> mCost;
    Eigen::MatrixXi mColOf;
    std::optional<Simplex> mLp;
    bool mLazyPairs = false;
    std::set<std::pair<std::vector<std::tuple<int, int, double>>, double>> mCutKeys;

    double mUpperBound = kInf;
    double mLowerBound = -kInf;
    std::vector<RouteReport> mIncumbent;
    size_t mSpMark = 0;
    bool mFinished = false;
    SolutionReport mReport;
};

}  // namespace

SolutionReport solve(const Instance& instance, ProblemVariant variant, const BncConfig& config,
                     std::vector<CutRecord>* ledger)
{
    Engine engine(instance, variant, config, ledger);
    return engine.Run();
}

}  // namespace l3cvrp
