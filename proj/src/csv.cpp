#include "spbvp/csv.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace spbvp {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string epsilon_label(double epsilon) {
  int exp = 0;
  const double mant = std::frexp(epsilon, &exp);
  if (mant == 0.5) {
    return "2^" + std::to_string(exp - 1);
  }
  return format_double(epsilon);
}

void write_mesh_csv(std::ostream& out, const Mesh& mesh) {
  out << "index,x,h\n";
  for (int i = 0; i <= mesh.n(); ++i) {
    out << i << ',' << format_double(mesh.x(i)) << ',';
    if (i < mesh.n()) {
      out << format_double(mesh.h()[i]);
    }
    out << '\n';
  }
}

void write_nodal_csv(std::ostream& out, const DiscreteSolution& sol, const Problem& p) {
  const bool exact = p.has_exact();
  out << "i,x_i,ybar_i" << (exact ? ",y_exact_i,abs_err_i" : "") << '\n';
  for (std::size_t i = 0; i < sol.ybar.size(); ++i) {
    const double x = sol.mesh.x(i);
    out << i << ',' << format_double(x) << ',' << format_double(sol.ybar[i]);
    if (exact) {
      const double y = exact_eval(p, x);
      out << ',' << format_double(y) << ',' << format_double(std::abs(y - sol.ybar[i]));
    }
    out << '\n';
  }
}

void write_global_csv(std::ostream& out, const GlobalSolution& g, const Problem& p, int per_interval) {
  const bool exact = p.has_exact();
  out << "# mode=" << to_string(g.mode()) << " epsilon=" << format_double(p.epsilon())
      << " N=" << g.mesh().n() << " problem=" << p.name() << '\n';
  out << "x,Y" << (exact ? ",y_exact,abs_err" : "") << '\n';
  for (double x : sample_points(g.mesh(), per_interval)) {
    const double y = g(x);
    out << format_double(x) << ',' << format_double(y);
    if (exact) {
      const double ye = exact_eval(p, x);
      out << ',' << format_double(ye) << ',' << format_double(std::abs(ye - y));
    }
    out << '\n';
  }
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "epsilon,N,E_N,Ord,layer_left,interior,layer_right,global_max,mode,converged,iterations\n";
  for (const auto& row : report.rows) {
    out << format_double(row.epsilon) << ',' << row.n << ',' << format_double(row.e_n) << ','
        << format_optional(row.ord) << ',';
    if (row.regions) {
      const auto& r = *row.regions;
      out << format_double(r.layer_left) << ',' << format_double(r.interior) << ','
          << format_double(r.layer_right) << ',' << format_double(r.global_max);
    } else {
      out << ",,,";
    }
    out << ',' << to_string(row.mode) << ',' << (row.converged ? "true" : "false") << ',' << row.iterations
        << '\n';
  }
}

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(4) << v;
  return s.str();
}

std::string fixed2(const std::optional<double>& v) {
  if (!v) {
    return "-";
  }
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << *v;
  return s.str();
}

std::string n_label(int n) {
  const auto un = static_cast<unsigned>(n);
  if ((un & (un - 1)) == 0) {
    int k = 0;
    while ((1u << k) != un) {
      ++k;
    }
    return "2^" + std::to_string(k);
  }
  return std::to_string(n);
}

}  // namespace

void write_report_pretty(std::ostream& out, const ConvergenceReport& report, std::size_t group_width) {
  const bool repaired = report.mode == GlobalMode::repaired;
  const int cell = 12;
  const int ord = 6;
  const int group_chars = repaired ? 2 * (cell + ord) : cell + ord;
  if (group_width == 0) {
    group_width = report.epsilons.size();
  }

  for (std::size_t start = 0; start < report.epsilons.size(); start += group_width) {
    const std::size_t stop = std::min(start + group_width, report.epsilons.size());
    std::ostringstream header;
    header << std::setw(6) << "N";
    for (std::size_t e = start; e < stop; ++e) {
      header << " |" << std::setw(cell) << "E_N" << std::setw(ord) << "Ord";
      if (repaired) {
        header << std::setw(cell) << "global" << std::setw(ord) << "Ord";
      }
    }
    const std::string rule(header.str().size(), '-');
    out << rule << '\n' << header.str() << '\n' << rule << '\n';

    for (std::size_t j = 0; j < report.ns.size(); ++j) {
      out << std::setw(6) << n_label(report.ns[j]);
      for (std::size_t e = start; e < stop; ++e) {
        const auto& row = report.at(e, j);
        out << " |" << std::setw(cell) << (row.converged ? sci(row.e_n) : std::string("no-conv"))
            << std::setw(ord) << fixed2(row.ord);
        if (repaired) {
          out << std::setw(cell) << (row.regions ? sci(row.regions->global_max) : std::string("n/a"))
              << std::setw(ord) << fixed2(row.global_ord);
        }
      }
      out << '\n';
    }
    out << rule << '\n' << std::setw(6) << "eps";
    for (std::size_t e = start; e < stop; ++e) {
      out << " |" << std::setw(group_chars) << epsilon_label(report.epsilons[e]);
    }
    out << '\n' << rule << "\n\n";
  }
}

}  // namespace spbvp
