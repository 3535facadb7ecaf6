#include "trishlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace trishlab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj, const Objective& obj,
                          const Schedule& sched, const std::vector<EnergyRecord>* records) {
    if (records && records->size() != traj.samples.size())
        fail(Errc::InvalidArgument, "csv: records must align with trajectory samples");
    std::ofstream out(path);
    if (!out) fail(Errc::Io, "csv: cannot open '" + path + "' for writing");

    const int d = traj.dim;
    out << "t";
    for (int i = 0; i < d; ++i) out << ",x" << i;
    for (int i = 0; i < d; ++i) out << ",v" << i;
    out << ",fgap,gradnorm,eps,dist_xeps,dist_xstar,E_p,calE_p,mu,G,vp_norm\n";

    for (size_t k = 0; k < traj.samples.size(); ++k) {
        const State& s = traj.samples[k];
        out << fmt17(s.t);
        for (int i = 0; i < d; ++i) out << ',' << fmt17(s.x[i]);
        for (int i = 0; i < d; ++i) out << ',' << fmt17(s.v[i]);
        out << ',';
        if (obj.min_value) out << fmt17(eval(obj, s.x) - *obj.min_value);
        out << ',' << fmt17(norm2(grad(obj, s.x)));
        out << ',' << fmt17(sched.eps(s.t));
        const EnergyRecord* rec = records ? &(*records)[k] : nullptr;
        out << ',';
        if (rec) out << fmt17(rec->dist_xeps);
        out << ',';
        if (obj.min_norm_solution) out << fmt17(dist(s.x, *obj.min_norm_solution));
        out << ',';
        if (rec) out << fmt17(rec->E_p);
        out << ',';
        if (rec) out << fmt17(rec->calE_p);
        out << ',';
        if (rec) out << fmt17(rec->mu);
        out << ',';
        if (rec) out << fmt17(rec->G);
        out << ',';
        if (rec) out << fmt17(rec->vp_norm);
        out << '\n';
    }
    if (!out) fail(Errc::Io, "csv: write to '" + path + "' failed");
}

int CsvTable::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

Series CsvTable::series(const std::string& column) const {
    const int tc = column_index("t");
    const int qc = column_index(column);
    if (tc < 0) fail(Errc::InvalidArgument, "csv: no 't' column");
    if (qc < 0) fail(Errc::InvalidArgument, "csv: no '" + column + "' column");
    Series s;
    for (const auto& row : rows) {
        const double t = row[tc], q = row[qc];
        if (std::isnan(t) || std::isnan(q)) continue;
        s.t.push_back(t);
        s.q.push_back(q);
    }
    return s;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "csv: cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) fail(Errc::Io, "csv: '" + path + "' is empty");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.columns.size());
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            row.push_back(cell.empty() ? std::numeric_limits<double>::quiet_NaN()
                                       : std::stod(cell));
        while (row.size() < table.columns.size())
            row.push_back(std::numeric_limits<double>::quiet_NaN());
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

struct LogRange {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (v > 0.0) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    bool ok() const { return lo < hi; }
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

void write_svg_loglog(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series) {
    LogRange xr, yr;
    for (const auto& s : series)
        for (size_t i = 0; i < s.t.size(); ++i)
            if (s.t[i] > 0.0 && s.q[i] > 0.0) {
                xr.add(s.t[i]);
                yr.add(s.q[i]);
            }
    if (!xr.ok() || !yr.ok())
        fail(Errc::NonPositiveQuantity, "svg: no positive data to place on log-log axes");

    const double W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    const double lx0 = std::floor(std::log10(xr.lo)), lx1 = std::ceil(std::log10(xr.hi));
    const double ly0 = std::floor(std::log10(yr.lo)), ly1 = std::ceil(std::log10(yr.hi));
    auto px = [&](double v) {
        return ml + (std::log10(v) - lx0) / std::max(lx1 - lx0, 1e-12) * (W - ml - mr);
    };
    auto py = [&](double v) {
        return H - mb - (std::log10(v) - ly0) / std::max(ly1 - ly0, 1e-12) * (H - mt - mb);
    };

    std::ofstream out(path);
    if (!out) fail(Errc::Io, "svg: cannot open '" + path + "' for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"16\">" << title << "</text>\n";

    // Decade gridlines with exponent labels.
    for (double e = lx0; e <= lx1 + 0.5; e += 1.0) {
        const double x = px(std::pow(10.0, e));
        out << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\"" << H - mb
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << H - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e"
            << static_cast<long>(e) << "</text>\n";
    }
    for (double e = ly0; e <= ly1 + 0.5; e += 1.0) {
        const double y = py(std::pow(10.0, e));
        out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << W - mr << "\" y2=\"" << y
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
            << static_cast<long>(e) << "</text>\n";
    }
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
        << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " transform=\"rotate(-90 18 " << H / 2 << ")\">" << ylabel << "</text>\n";

    for (size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\" points=\"";
        for (size_t i = 0; i < series[k].t.size(); ++i) {
            if (!(series[k].t[i] > 0.0) || !(series[k].q[i] > 0.0)) continue;
            out << px(series[k].t[i]) << ',' << py(series[k].q[i]) << ' ';
        }
        out << "\"/>\n";
        const double ly = mt + 16 + 16 * static_cast<double>(k);
        out << "<line x1=\"" << W - mr - 150 << "\" y1=\"" << ly << "\" x2=\"" << W - mr - 120
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - mr - 114 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[k].label
            << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) fail(Errc::Io, "svg: write to '" + path + "' failed");
}

}  // namespace trishlab
