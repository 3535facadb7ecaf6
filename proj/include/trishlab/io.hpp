#ifndef TRISHLAB_IO_HPP
#define TRISHLAB_IO_HPP

#include <string>
#include <vector>

#include "trishlab/lyapunov.hpp"

namespace trishlab {

/// Writes the trajectory as CSV with header
///   t, x0..x{d-1}, v0..v{d-1}, fgap, gradnorm, eps, dist_xeps, dist_xstar,
///   E_p, calE_p, mu, G, vp_norm
/// Floats carry 17 significant digits. fgap/dist_xstar are empty when the
/// objective lacks the reference data; the energy columns are empty when no
/// monitor records are supplied.
void write_trajectory_csv(const std::string& path, const Trajectory& traj, const Objective& obj,
                          const Schedule& sched, const std::vector<EnergyRecord>* records);

/// Numeric CSV table; empty cells parse as NaN.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const;  // -1 when absent
    Series series(const std::string& column) const;   // (t, column), NaN rows dropped
};

CsvTable read_csv(const std::string& path);

struct SvgSeries {
    std::string label;
    std::vector<double> t;
    std::vector<double> q;
};

/// Self-contained log-log polyline plot with decade gridlines. Nonpositive
/// values cannot be placed on log axes and are dropped per series.
void write_svg_loglog(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series);

}  // namespace trishlab

#endif
