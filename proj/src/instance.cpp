#include "l3cvrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace l3cvrp {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), mLine(line)
{
}

long CustomerRecord::volume() const
{
    long v = 0;
    for (const auto& item : items)
        v += item.volume();
    return v;
}

double Instance::weight_of(std::span<const int> nodes) const
{
    double q = 0.0;
    for (int node : nodes)
        if (node != 0)
            q += customer(node).weight;
    return q;
}

long Instance::volume_of(std::span<const int> nodes) const
{
    long v = 0;
    for (int node : nodes)
        if (node != 0)
            v += customer(node).volume();
    return v;
}

double Instance::route_cost(std::span<const int> sequence) const
{
    if (sequence.empty())
        return 0.0;
    double c = cost(0, sequence.front()) + cost(sequence.back(), 0);
    for (size_t k = 1; k < sequence.size(); ++k)
        c += cost(sequence[k - 1], sequence[k]);
    return c;
}

int required_vehicles(const Instance& instance, std::span<const int> nodes)
{
    const double q = instance.weight_of(nodes);
    const long v = instance.volume_of(nodes);
    const auto byWeight = static_cast<int>(std::ceil(q / instance.vehicle.weight_capacity - 1e-9));
    const auto byVolume = static_cast<int>((v + instance.vehicle.volume() - 1) / instance.vehicle.volume());
    return std::max({byWeight, byVolume, nodes.empty() ? 0 : 1});
}

Eigen::MatrixXd euclidean_costs(const Instance& instance)
{
    const int n = instance.num_nodes();
    Eigen::VectorXd xs(n), ys(n);
    xs(0) = instance.depot_x;
    ys(0) = instance.depot_y;
    for (int i = 1; i < n; ++i)
    {
        xs(i) = instance.customer(i).x;
        ys(i) = instance.customer(i).y;
    }

    Eigen::MatrixXd dx = xs.replicate(1, n) - xs.transpose().replicate(n, 1);
    Eigen::MatrixXd dy = ys.replicate(1, n) - ys.transpose().replicate(n, 1);
    return (dx.array().square() + dy.array().square()).sqrt().matrix();
}

void finalize(Instance& instance)
{
    validate(instance);
    instance.cost = euclidean_costs(instance);
}

void validate(const Instance& instance)
{
    const auto& veh = instance.vehicle;
    if (veh.count < 1)
        throw ValidationError("vehicle count must be positive");
    if (!(veh.weight_capacity > 0.0))
        throw ValidationError("vehicle weight capacity must be positive");
    if (veh.length <= 0 || veh.width <= 0 || veh.height <= 0)
        throw ValidationError("vehicle dimensions must be positive");

    for (size_t k = 0; k < instance.customers.size(); ++k)
    {
        const auto& c = instance.customers[k];
        const std::string who = "customer " + std::to_string(c.id);
        if (c.id != static_cast<int>(k) + 1)
            throw ValidationError(who + ": ids must run 1..n in order");
        if (c.weight < 0.0)
            throw ValidationError(who + ": negative weight");
        if (c.weight > veh.weight_capacity + 1e-9)
            throw ValidationError(who + ": weight exceeds vehicle capacity");
        if (c.items.empty())
            throw ValidationError(who + ": no items");
        for (size_t i = 0; i < c.items.size(); ++i)
        {
            const auto& it = c.items[i];
            const std::string what = who + " item " + std::to_string(i);
            if (it.length <= 0 || it.width <= 0 || it.height <= 0)
                throw ValidationError(what + ": dimensions must be positive");
            const bool fitsPlain = it.length <= veh.length && it.width <= veh.width;
            const bool fitsRotated = it.width <= veh.length && it.length <= veh.width;
            if (it.height > veh.height || (!fitsPlain && !fitsRotated))
                throw ValidationError(what + ": does not fit into the vehicle");
        }
        if (c.volume() > veh.volume())
            throw ValidationError(who + ": item volume exceeds vehicle volume");
    }
}

namespace {

/// Smallest number of bins of capacity `cap` holding all sizes. Falls back to the
/// best proven lower bound when the node limit is hit.
int bin_packing_optimum(std::vector<double> sizes, double cap)
{
    if (sizes.empty())
        return 0;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    const double eps = 1e-9 * std::max(1.0, cap);
    const double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
    const int lower = std::max(1, static_cast<int>(std::ceil(total / cap - 1e-9)));

    int ffd = 0;
    {
        std::vector<double> loads;
        for (double s : sizes)
        {
            auto it = std::find_if(loads.begin(), loads.end(), [&](double l) { return l + s <= cap + eps; });
            if (it == loads.end())
                loads.push_back(s);
            else
                *it += s;
        }
        ffd = static_cast<int>(loads.size());
    }

    long budget = 2'000'000;
    for (int k = lower; k < ffd; ++k)
    {
        std::vector<double> loads(k, 0.0);
        std::vector<double> suffix(sizes.size() + 1, 0.0);
        for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i)
            suffix[i] = suffix[i + 1] + sizes[i];

        bool exhausted = false;
        std::function<bool(size_t)> place = [&](size_t i) -> bool {
            if (i == sizes.size())
                return true;
            if (--budget < 0)
            {
                exhausted = true;
                return false;
            }
            double free = 0.0;
            for (double l : loads)
                free += cap - l;
            if (suffix[i] > free + eps)
                return false;
            for (int b = 0; b < k; ++b)
            {
                bool seen = false;
                for (int c = 0; c < b; ++c)
                    if (std::abs(loads[c] - loads[b]) <= eps)
                        seen = true;
                if (seen || loads[b] + sizes[i] > cap + eps)
                    continue;
                loads[b] += sizes[i];
                if (place(i + 1))
                    return true;
                loads[b] -= sizes[i];
                if (exhausted)
                    return false;
            }
            return false;
        };
        if (place(0))
            return k;
        if (exhausted)
            return k;
    }
    return ffd;
}

}  // namespace

int minimum_vehicles(const Instance& instance)
{
    std::vector<double> weights, volumes;
    for (const auto& c : instance.customers)
    {
        weights.push_back(c.weight);
        volumes.push_back(static_cast<double>(c.volume()));
    }
    return std::max(bin_packing_optimum(weights, instance.vehicle.weight_capacity),
                    bin_packing_optimum(volumes, static_cast<double>(instance.vehicle.volume())));
}

}  // namespace l3cvrp
