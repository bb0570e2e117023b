#pragma once

// CSV emitters for the documented output schemas. Floats print at 17
// significant digits so identical runs produce byte-identical files.

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "lmm/integrate.hpp"
#include "lmm/stability.hpp"

namespace lmm {

inline std::string format_double(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

/// Schema: re,im,inside
inline void write_region_csv(std::ostream& out, const RegionSample& s) {
    out << "re,im,inside\n";
    for (std::size_t i = 0; i < s.points.size(); ++i)
        out << format_double(s.points[i].real()) << "," << format_double(s.points[i].imag())
            << "," << (s.inside[i] ? 1 : 0) << "\n";
}

/// Schema: theta,re,im,is_pole
inline void write_locus_csv(std::ostream& out, const std::vector<LocusPoint>& locus) {
    out << "theta,re,im,is_pole\n";
    for (const auto& p : locus)
        out << format_double(p.theta) << "," << format_double(p.z.real()) << ","
            << format_double(p.z.imag()) << "," << (p.is_pole ? 1 : 0) << "\n";
}

/// Schema: t,y0,y1,...
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t";
    const std::size_t d = traj.states.empty() ? 0 : traj.states[0].size();
    for (std::size_t i = 0; i < d; ++i) out << ",y" << i;
    out << "\n";
    for (std::size_t n = 0; n < traj.times.size(); ++n) {
        out << format_double(traj.times[n]);
        for (double v : traj.states[n]) out << "," << format_double(v);
        out << "\n";
    }
}

/// Schema: h,error,log2_ratio (ratio blank on the first row)
inline void write_convergence_csv(std::ostream& out, const ConvergenceReport& rep) {
    out << "h,error,log2_ratio\n";
    for (std::size_t i = 0; i < rep.h_values.size(); ++i) {
        out << format_double(rep.h_values[i]) << "," << format_double(rep.errors[i]) << ",";
        if (i > 0 && rep.errors[i] > 0.0)
            out << format_double(std::log2(rep.errors[i - 1] / rep.errors[i]));
        out << "\n";
    }
}

}  // namespace lmm
