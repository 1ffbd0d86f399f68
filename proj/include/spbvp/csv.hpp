#pragma once

#include "spbvp/analysis.hpp"
#include "spbvp/global.hpp"
#include "spbvp/mesh.hpp"
#include "spbvp/problem.hpp"
#include "spbvp/scheme.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace spbvp {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// index,x,h (h empty on the last node).
void write_mesh_csv(std::ostream& out, const Mesh& mesh);

/// i,x_i,ybar_i[,y_exact_i,abs_err_i].
void write_nodal_csv(std::ostream& out, const DiscreteSolution& sol, const Problem& p);

/// A "# mode=... epsilon=... N=..." line, then x,Y[,y_exact,abs_err] at
/// `per_interval` samples per interval plus both endpoints.
void write_global_csv(std::ostream& out, const GlobalSolution& g, const Problem& p, int per_interval);

/// epsilon,N,E_N,Ord,layer_left,interior,layer_right,global_max,mode,converged,iterations
void write_report_csv(std::ostream& out, const ConvergenceReport& report);

/// Fixed-width table: one row per N, one column group (E_N, Ord) per
/// epsilon, epsilon labels under each block of `group_width` epsilons.
/// Repaired-mode reports add the global error and its order to each group.
void write_report_pretty(std::ostream& out, const ConvergenceReport& report, std::size_t group_width = 3);

/// "2^-10" style label when epsilon is an exact power of two.
std::string epsilon_label(double epsilon);

}  // namespace spbvp
