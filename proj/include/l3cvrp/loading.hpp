#pragma once

#include "l3cvrp/instance.hpp"

#include <span>
#include <string>
#include <vector>

namespace l3cvrp {

struct Container
{
    int length = 0;
    int width = 0;
    int height = 0;

    long volume() const { return long(length) * width * height; }
    friend bool operator==(const Container&, const Container&) = default;
};

inline Container container_of(const VehicleSpec& v) { return {v.length, v.width, v.height}; }

/// A box to be loaded. Higher groups leave the vehicle earlier.
struct LoadItem
{
    int length = 0;
    int width = 0;
    int height = 0;
    bool fragile = false;
    int group = 1;
    int customer = 0;
    int index = 0;

    long volume() const { return long(length) * width * height; }
    friend bool operator==(const LoadItem&, const LoadItem&) = default;
};

struct Placement
{
    LoadItem item;
    int x = 0;
    int y = 0;
    int z = 0;
    bool rotated = false;

    int dx() const { return rotated ? item.width : item.length; }
    int dy() const { return rotated ? item.length : item.width; }
    int dz() const { return item.height; }
    int top() const { return z + item.height; }
};

struct Packing
{
    Container container;
    std::vector<Placement> placements;
    /// Group ids in unloading order. Empty means descending group id.
    std::vector<int> unload_order;
};

enum class LoadingKind
{
    AllConstraints,
    NoFragility,
    NoLifo,
    NoSupport,
    LoadingOnly,
    LifoNoSequence
};

struct LoadingVariant
{
    LoadingKind kind = LoadingKind::AllConstraints;
    double support_ratio = 0.75;
};

enum class LifoMode
{
    Off,
    Sequence,
    AnySequence
};

/// Flag view of a loading variant. Every check in the library works on this.
struct ConstraintSet
{
    bool fragility = true;
    bool support = true;
    LifoMode lifo = LifoMode::Sequence;
    double support_ratio = 0.75;

    ConstraintSet() = default;
    ConstraintSet(bool fragility, bool support, LifoMode lifo, double ratio = 0.75)
        : fragility(fragility), support(support), lifo(lifo), support_ratio(ratio)
    {
    }
    ConstraintSet(LoadingVariant variant);

    ConstraintSet without_support() const { return {fragility, false, lifo, support_ratio}; }
    ConstraintSet with_lifo(LifoMode mode) const { return {fragility, support, mode, support_ratio}; }
    ConstraintSet without_fragility() const { return {false, support, lifo, support_ratio}; }

    /// True when every packing feasible under *this is feasible under `other`.
    bool at_least_as_strict_as(const ConstraintSet& other) const;
    std::string key() const;

    friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

std::string to_string(LoadingKind kind);

inline bool overlap_1d(int a, int la, int b, int lb) { return a < b + lb && b < a + la; }
inline long overlap_len(int a, int la, int b, int lb)
{
    const int lo = a > b ? a : b;
    const int hi = (a + la) < (b + lb) ? (a + la) : (b + lb);
    return hi > lo ? hi - lo : 0;
}

bool overlaps(const Placement& p, const Placement& q);
long xy_overlap_area(const Placement& p, const Placement& q);

/// Fraction of the base of `pk.placements[index]` resting on the floor or on top faces.
double support_ratio_of(const Packing& pk, size_t index);

/// Integer form of the support test, free of rounding.
bool supported(long coveredArea, long baseArea, double ratio);

bool fragility_ok(const Packing& pk);

/// `blocker` must leave before `blocked` can be taken out through the door at x = L.
bool blocks(const Placement& blocker, const Placement& blocked);

/// LIFO under `pk.unload_order` (or descending group ids when it is empty).
bool lifo_ok(const Packing& pk);

enum class ViolationKind
{
    OutOfBounds,
    Overlap,
    Fragility,
    Support,
    Lifo,
    UnloadOrder
};

struct Violation
{
    ViolationKind kind;
    int first = -1;
    int second = -1;
};

std::string to_string(ViolationKind kind);

std::vector<Violation> validate_packing(const Packing& pk, const ConstraintSet& constraints);

/// Items of the customers in `route`, grouped by visiting position: the first
/// customer gets the highest group.
std::vector<LoadItem> route_items(const Instance& instance, std::span<const int> route);

}  // namespace l3cvrp
