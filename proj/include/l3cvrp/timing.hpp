#pragma once

#include <chrono>
#include <limits>
#include <optional>

namespace l3cvrp {

using Clock = std::chrono::steady_clock;

class TimeBudget
{
  public:
    static TimeBudget unlimited() { return TimeBudget(); }
    static TimeBudget seconds(double s) { return TimeBudget(s < 0.0 ? 0.0 : s); }

    bool is_unlimited() const { return !mSeconds.has_value(); }
    double value() const { return mSeconds.value_or(std::numeric_limits<double>::infinity()); }

  private:
    TimeBudget() = default;
    explicit TimeBudget(double s) : mSeconds(s) {}
    std::optional<double> mSeconds;
};

/// A point in time after which work should stop. Default constructed: never.
class Deadline
{
  public:
    Deadline() = default;

    static Deadline after(TimeBudget budget)
    {
        Deadline d;
        if (!budget.is_unlimited())
            d.mAt = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.value()));
        return d;
    }

    bool is_unlimited() const { return !mAt.has_value(); }
    bool expired() const { return mAt.has_value() && Clock::now() >= *mAt; }

    double remaining() const
    {
        if (!mAt)
            return std::numeric_limits<double>::infinity();
        return std::chrono::duration<double>(*mAt - Clock::now()).count();
    }

    Deadline earliest(const Deadline& other) const
    {
        if (!mAt)
            return other;
        if (!other.mAt)
            return *this;
        return *mAt < *other.mAt ? *this : other;
    }

  private:
    std::optional<Clock::time_point> mAt;
};

class Stopwatch
{
  public:
    Stopwatch() : mStart(Clock::now()) {}
    double elapsed() const { return std::chrono::duration<double>(Clock::now() - mStart).count(); }

  private:
    Clock::time_point mStart;
};

}  // namespace l3cvrp
