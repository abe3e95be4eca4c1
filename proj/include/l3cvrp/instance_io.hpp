#pragma once

#include "l3cvrp/instance.hpp"
#include "l3cvrp/solution.hpp"

#include <string>
#include <string_view>

namespace l3cvrp {

/// Whitespace-separated benchmark layout, see docs/benchmark_format.md.
Instance parse_benchmark(std::string_view text);

Instance parse_canonical(std::string_view text);
std::string write_canonical(const Instance& instance);

/// Picks the reader from the first non-blank character.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);

/// Refuses reports whose routes visit a customer twice.
std::string write_solution(const SolutionReport& report);
SolutionReport parse_solution(std::string_view text);

std::string read_text_file(const std::string& path);

}  // namespace l3cvrp
