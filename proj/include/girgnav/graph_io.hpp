#pragma once

#include <girgnav/hyperbolic.hpp>
#include <girgnav/model.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

namespace girgnav {

// Line-oriented text formats.
//
//   girg-graph v1
//   params n=<real> d=<int> beta=<real> wmin=<real> alpha=<real|inf> kernel_c=<real> c1=<real> c2=<real> ep3=<0|1> seed=<u64>
//   vertices <count>
//   <id> <weight> <coord_1> ... <coord_d>
//   edges <count>
//   <id_u> <id_v>                                   (id_u < id_v)
//
//   hyperbolic-graph v1
//   params n=<int> alpha_h=<real> c_h=<real> t_h=<real> seed=<u64>
//   vertices <count>
//   <id> <r> <nu>
//   edges <count>
//   <id_u> <id_v>
//
// Reals are written with 17 significant digits.

void write_graph(std::ostream& out, const Graph& g);
void write_hyperbolic_graph(std::ostream& out, const HyperbolicGraph& hg);

/// Throws IoError on malformed input.
Graph read_graph(std::istream& in);
HyperbolicGraph read_hyperbolic_graph(std::istream& in);

using AnyGraph = std::variant<Graph, HyperbolicGraph>;

/// Reads either format, dispatching on the header line.
AnyGraph read_any_graph(std::istream& in);

void save_graph(const std::filesystem::path& path, const Graph& g);
void save_hyperbolic_graph(const std::filesystem::path& path, const HyperbolicGraph& hg);
AnyGraph load_any_graph(const std::filesystem::path& path);

/// "%.17g", with infinities spelled "inf".
std::string format_real(double x);

} // namespace girgnav
