#ifndef MPTSP_IO_HPP
#define MPTSP_IO_HPP

#include <string>
#include <string_view>
#include <variant>

#include "mptsp/instance.hpp"

namespace mptsp {

using AnyInstance = std::variant<Instance, OrderedInstance>;

// Parses {"n", "edges", "commodities"} or {"n", "edges", "order"}. Throws
// Error with a code naming the first problem found.
AnyInstance load_instance(std::string_view text);
Instance load_multipath_instance(std::string_view text);
OrderedInstance load_ordered_instance(std::string_view text);

std::string save_instance(const Instance& inst);
std::string save_instance(const OrderedInstance& inst);

std::string save_solution(const Solution& sol);
Solution load_solution(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace mptsp

#endif  // MPTSP_IO_HPP
