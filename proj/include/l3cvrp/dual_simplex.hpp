#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace l3cvrp::lp {

enum class LpStatus
{
    Optimal,
    Infeasible,
    IterationLimit
};

/// Bounded dual simplex on a dense tableau.
///
/// minimise c'x subject to lo_r <= a_r'x <= up_r and l <= x <= u, all structural
/// bounds finite. Row r owns slack s_r = a_r'x, so the tableau stores
/// B^-1 [A  -I]. Structural costs may have any sign; a nonbasic column sits at
/// whichever bound keeps its reduced cost dual feasible, so the slack basis is
/// a valid start and every later change (bounds, new rows) is a warm start.
template <typename Scalar>
class DualSimplex
{
  public:
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Term = std::pair<int, Scalar>;

    struct Options
    {
        Scalar primal_tol = Scalar(1e-9);
        Scalar dual_tol = Scalar(1e-9);
        Scalar pivot_tol = Scalar(1e-9);
        int refactor_interval = 400;
        long max_iterations = 200000;
    };

    DualSimplex(const Vec& cost, const Vec& lower, const Vec& upper, Options options = {})
        : mOpt(options), mN(static_cast<int>(cost.size())), mCost(cost), mLower(lower), mUpper(upper)
    {
        mTab.resize(0, mN);
        mA.resize(0, mN);
        mD = RowVec(cost.transpose());
        mX = Vec::Zero(mN);
        mStatus.assign(mN, Status::AtLower);
        for (int j = 0; j < mN; ++j)
            PlaceNonbasic(j);
    }

    int num_cols() const { return mN; }
    int num_rows() const { return static_cast<int>(mHead.size()); }
    long iterations() const { return mIterations; }

    /// Appends rows lo <= a'x <= up; their slacks enter the basis.
    void add_rows(const std::vector<std::vector<Term>>& rows, const std::vector<Scalar>& lo,
                  const std::vector<Scalar>& up)
    {
        const int m0 = num_rows();
        const int k = static_cast<int>(rows.size());
        if (k == 0)
            return;
        const int total0 = mN + m0;
        mTab.conservativeResize(m0 + k, total0 + k);
        mTab.block(0, total0, m0, k).setZero();
        mTab.bottomRows(k).setZero();
        mA.conservativeResize(m0 + k, Eigen::NoChange);
        mA.bottomRows(k).setZero();
        mD.conservativeResize(total0 + k);
        mD.tail(k).setZero();
        mX.conservativeResize(total0 + k);
        mLower.conservativeResize(total0 + k);
        mUpper.conservativeResize(total0 + k);

        for (int i = 0; i < k; ++i)
        {
            const int r = m0 + i;
            const int slack = total0 + i;
            for (const auto& [j, a] : rows[i])
                mA(r, j) += a;

            // s - a'x = 0, then eliminate the basic structurals.
            auto row = mTab.row(r);
            row.head(mN) = -mA.row(r);
            row(slack) = Scalar(1);
            for (int q = 0; q < m0; ++q)
            {
                const int b = mHead[q];
                if (b < mN && mA(r, b) != Scalar(0))
                    row += mA(r, b) * mTab.row(q);
            }
            mX(slack) = mA.row(r).dot(mX.head(mN));
            mLower(slack) = lo[i];
            mUpper(slack) = up[i];
            mHead.push_back(slack);
            mStatus.push_back(Status::Basic);
        }
    }

    void add_row(const std::vector<Term>& row, Scalar lo, Scalar up) { add_rows({row}, {lo}, {up}); }

    void set_bounds(int j, Scalar lo, Scalar up)
    {
        mLower(j) = lo;
        mUpper(j) = up;
        if (mStatus[j] != Status::Basic)
        {
            const Scalar old = mX(j);
            PlaceNonbasic(j);
            const Scalar delta = mX(j) - old;
            if (delta != Scalar(0))
                ShiftBasics(j, delta);
        }
    }

    Scalar lower(int j) const { return mLower(j); }
    Scalar upper(int j) const { return mUpper(j); }

    LpStatus solve()
    {
        int sinceRefactor = 0;
        for (int attempt = 0; attempt < 3; ++attempt)
        {
            RecomputeBasics();
            const LpStatus st = Iterate(sinceRefactor);
            if (st != LpStatus::Optimal)
                return st;
            if (Residual() <= Scalar(1e-7) && DualFeasible())
                return st;
            Refactor();
            sinceRefactor = 0;
        }
        return LpStatus::Optimal;
    }

    Scalar objective() const { return mCost.dot(mX.head(mN)); }
    Vec primal() const { return mX.head(mN); }
    Scalar value(int j) const { return mX(j); }
    Scalar reduced_cost(int j) const { return mD(j); }
    bool is_basic(int j) const { return mStatus[j] == Status::Basic; }

    /// Rebuilds the tableau and reduced costs from the current basis.
    void Refactor()
    {
        const int m = num_rows();
        if (m == 0)
        {
            mD.head(mN) = mCost.transpose();
            return;
        }
        const int total = mN + m;
        Mat full(m, total);
        full.leftCols(mN) = mA;
        full.rightCols(m) = -Mat::Identity(m, m);
        Mat basis(m, m);
        for (int r = 0; r < m; ++r)
            basis.col(r) = full.col(mHead[r]);
        Eigen::PartialPivLU<Mat> lu(basis);
        mTab = lu.solve(full);
        Vec cb(m);
        for (int r = 0; r < m; ++r)
            cb(r) = mHead[r] < mN ? mCost(mHead[r]) : Scalar(0);
        RowVec c = RowVec::Zero(total);
        c.head(mN) = mCost.transpose();
        mD = c - cb.transpose() * mTab;
        for (int r = 0; r < m; ++r)
            mD(mHead[r]) = Scalar(0);
        for (int j = 0; j < total; ++j)
            if (mStatus[j] != Status::Basic)
                PlaceNonbasic(j);
    }

  private:
    enum class Status : unsigned char
    {
        Basic,
        AtLower,
        AtUpper
    };

    /// Puts nonbasic j at the bound its reduced cost asks for.
    void PlaceNonbasic(int j)
    {
        const bool lowFinite = std::isfinite(static_cast<double>(mLower(j)));
        const bool upFinite = std::isfinite(static_cast<double>(mUpper(j)));
        bool atUpper = mD(j) < Scalar(0);
        if (mLower(j) == mUpper(j))
            atUpper = false;
        if (atUpper && !upFinite)
            atUpper = false;
        if (!atUpper && !lowFinite)
            atUpper = true;
        mStatus[j] = atUpper ? Status::AtUpper : Status::AtLower;
        mX(j) = atUpper ? mUpper(j) : mLower(j);
    }

    void ShiftBasics(int j, Scalar delta)
    {
        for (int r = 0; r < num_rows(); ++r)
            mX(mHead[r]) -= mTab(r, j) * delta;
    }

    void RecomputeBasics()
    {
        const int m = num_rows();
        const int total = mN + m;
        Vec xn = mX;
        for (int r = 0; r < m; ++r)
            xn(mHead[r]) = Scalar(0);
        Vec xb = -(mTab * xn.head(total));
        for (int r = 0; r < m; ++r)
            mX(mHead[r]) = xb(r);
    }

    Scalar Residual() const
    {
        Scalar worst = 0;
        for (int r = 0; r < num_rows(); ++r)
        {
            const Scalar s = mA.row(r).dot(mX.head(mN));
            worst = std::max(worst, std::abs(s - mX(mN + r)));
        }
        return worst;
    }

    bool DualFeasible() const
    {
        const Scalar tol = Scalar(1e-7);
        for (int j = 0; j < mN + num_rows(); ++j)
        {
            if (mStatus[j] == Status::Basic || mLower(j) == mUpper(j))
                continue;
            if (mStatus[j] == Status::AtLower && mD(j) < -tol)
                return false;
            if (mStatus[j] == Status::AtUpper && mD(j) > tol)
                return false;
        }
        return true;
    }

    LpStatus Iterate(int& sinceRefactor)
    {
        const int m = num_rows();
        const int total = mN + m;
        long stall = 0;
        Scalar lastObj = std::numeric_limits<Scalar>::infinity();
        while (true)
        {
            if (mIterations >= mOpt.max_iterations)
                return LpStatus::IterationLimit;

            // leaving row: largest bound violation (smallest index once stalling)
            int r = -1;
            Scalar worst = mOpt.primal_tol;
            bool below = false;
            const bool bland = stall > 50;
            for (int q = 0; q < m; ++q)
            {
                const int b = mHead[q];
                const Scalar lo = mLower(b) - mX(b);
                const Scalar hi = mX(b) - mUpper(b);
                const Scalar v = std::max(lo, hi);
                if (v > worst)
                {
                    worst = v;
                    r = q;
                    below = lo > hi;
                    if (bland)
                        break;
                }
            }
            if (r < 0)
                return LpStatus::Optimal;

            // entering column: Harris two-pass ratio test
            auto row = mTab.row(r);
            Scalar bound = std::numeric_limits<Scalar>::infinity();
            for (int j = 0; j < total; ++j)
            {
                if (!Eligible(j, row(j), below))
                    continue;
                const Scalar ratio = (DualSlack(j) + mOpt.dual_tol) / std::abs(row(j));
                bound = std::min(bound, ratio);
            }
            if (!std::isfinite(static_cast<double>(bound)))
                return LpStatus::Infeasible;
            int q = -1;
            Scalar best = 0;
            for (int j = 0; j < total; ++j)
            {
                if (!Eligible(j, row(j), below))
                    continue;
                const Scalar a = std::abs(row(j));
                if (DualSlack(j) / a <= bound && a > best)
                {
                    best = a;
                    q = j;
                    if (bland)
                        break;
                }
            }
            if (q < 0)
                return LpStatus::Infeasible;

            Pivot(r, q, below);
            ++mIterations;
            if (++sinceRefactor >= mOpt.refactor_interval)
            {
                Refactor();
                RecomputeBasics();
                sinceRefactor = 0;
            }
            const Scalar obj = objective();
            stall = obj > lastObj + Scalar(1e-12) ? 0 : stall + 1;
            lastObj = obj;
        }
    }

    bool Eligible(int j, Scalar alpha, bool increase) const
    {
        if (mStatus[j] == Status::Basic || mLower(j) == mUpper(j) || std::abs(alpha) <= mOpt.pivot_tol)
            return false;
        // the leaving variable moves by -alpha * delta_j
        const bool canGrow = mStatus[j] == Status::AtLower;
        return increase ? (canGrow ? alpha < 0 : alpha > 0) : (canGrow ? alpha > 0 : alpha < 0);
    }

    Scalar DualSlack(int j) const
    {
        const Scalar d = mStatus[j] == Status::AtLower ? mD(j) : -mD(j);
        return d > Scalar(0) ? d : Scalar(0);
    }

    void Pivot(int r, int q, bool below)
    {
        const int b = mHead[r];
        const Scalar target = below ? mLower(b) : mUpper(b);
        const Scalar piv = mTab(r, q);
        const Scalar delta = (mX(b) - target) / piv;
        mX(q) += delta;
        ShiftBasics(q, delta);
        mX(b) = target;

        RowVec prow = mTab.row(r) / piv;
        Vec col = mTab.col(q);
        col(r) = Scalar(0);
        mTab.noalias() -= col * prow;
        mTab.row(r) = prow;
        const Scalar dq = mD(q);
        mD.noalias() -= dq * prow;
        mD(q) = Scalar(0);

        mHead[r] = q;
        mStatus[q] = Status::Basic;
        mStatus[b] = below ? Status::AtLower : Status::AtUpper;
    }

    Options mOpt;
    int mN;
    Vec mCost;
    Vec mLower, mUpper;
    Mat mTab;
    Mat mA;
    RowVec mD;
    Vec mX;
    std::vector<int> mHead;
    std::vector<Status> mStatus;
    long mIterations = 0;
};

}  // namespace l3cvrp::lp
