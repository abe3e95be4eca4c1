#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace l3cvrp {

class ParseError : public std::runtime_error
{
  public:
    ParseError(int line, const std::string& message);
    int Line() const noexcept { return mLine; }

  private:
    int mLine;
};

class ValidationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct ItemSpec
{
    int length = 0;
    int width = 0;
    int height = 0;
    bool fragile = false;
    /// Filled by the loading layer from the route position; zero in parsed instances.
    int group_id = 0;

    long volume() const { return long(length) * width * height; }
    friend bool operator==(const ItemSpec&, const ItemSpec&) = default;
};

struct CustomerRecord
{
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double weight = 0.0;
    std::vector<ItemSpec> items;

    long volume() const;
    friend bool operator==(const CustomerRecord&, const CustomerRecord&) = default;
};

struct VehicleSpec
{
    int count = 0;
    double weight_capacity = 0.0;
    int length = 0;
    int width = 0;
    int height = 0;

    long volume() const { return long(length) * width * height; }
    friend bool operator==(const VehicleSpec&, const VehicleSpec&) = default;
};

/// Node 0 is the depot, customers are nodes 1..n in the order of `customers`.
struct Instance
{
    std::string name;
    VehicleSpec vehicle;
    double depot_x = 0.0;
    double depot_y = 0.0;
    std::vector<CustomerRecord> customers;
    Eigen::MatrixXd cost;

    int num_customers() const { return static_cast<int>(customers.size()); }
    int num_nodes() const { return num_customers() + 1; }
    const CustomerRecord& customer(int node) const { return customers.at(node - 1); }

    double weight_of(std::span<const int> nodes) const;
    long volume_of(std::span<const int> nodes) const;
    double route_cost(std::span<const int> sequence) const;
};

/// Rounded-up number of vehicles needed by weight and by volume, whichever is larger.
int required_vehicles(const Instance& instance, std::span<const int> nodes);

Eigen::MatrixXd euclidean_costs(const Instance& instance);

/// Recomputes the cost matrix and checks every structural invariant.
void finalize(Instance& instance);

/// Throws ValidationError naming the first offending record.
void validate(const Instance& instance);

/// Optimal 1D bin-packing bound over weight and over volume, customers indivisible.
int minimum_vehicles(const Instance& instance);

}  // namespace l3cvrp
