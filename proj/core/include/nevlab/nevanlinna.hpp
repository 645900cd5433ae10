#pragma once

#include "nevlab/meromorphic.hpp"
#include "nevlab/sphere.hpp"
#include "nevlab/surface.hpp"
#include "nevlab/zeros.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nevlab {

/// 1 when the surface reaches past radius 2, else half the radius.
double default_r0(double s_radius);

/// All zeros of <f; a> in {|w| < radius}, located once and reused for
/// every smaller radius of a grid sweep.
struct TargetZeroSet {
    SpherePoint target = SpherePoint::zero();
    double radius = 0.0; // effective (nudged) contour radius
    std::vector<ZeroRecord> zeros;
};

TargetZeroSet tabulate_zeros(const MeromorphicMap& f, const SpherePoint& a,
                             double r_max, double zero_tol = 1e-6);

/// Log-weighted count from a zero table:
///   sum over |w_k| <= r0 of log(r/r0)  +  sum over r0 < |w_k| <= r of log(r/|w_k|),
/// each zero weighted by its multiplicity (or by 1 when truncated).
double counting_from_records(const std::vector<ZeroRecord>& zeros,
                             double r0, double r, bool truncated);

/// Integrated counting function N(r, a) from r0, with multiplicity.
double counting(const MeromorphicMap& f, const SpherePoint& a,
                double r0, double r, double zero_tol = 1e-6);

/// N-bar: multiplicities ignored.
double simple_counting(const MeromorphicMap& f, const SpherePoint& a,
                       double r0, double r, double zero_tol = 1e-6);

/// Proximity m(r, a): harmonic-measure average of log(1/||f, a||) over
/// the circle of radius r.  Angles where f passes near a are located by
/// an on-circle scan (and from `zero_table` when given) and the circle
/// integral is split there.
double proximity(const MeromorphicMap& f, const SpherePoint& a, double r,
                 double abs_tol = 1e-8, const TargetZeroSet* zero_table = nullptr);

/// Ahlfors characteristic between r0 and r, evaluated as one area
/// integral with the weight min(log(r/|w|), log(r/r0)) against the
/// pullback density.
double characteristic_ahlfors(const MeromorphicMap& f, double r0, double r,
                              double abs_tol = 1e-8);

/// Green-function form of the characteristic: quarter-integral of the
/// Green function against the metric Laplacian of log ||f||^2, taken at
/// r minus the same at r0.  Metric factors cancel; agrees with the
/// Ahlfors form to quadrature tolerance.
double characteristic_green(const MeromorphicMap& f, const SurfaceModel& surface,
                            double r0, double r, double abs_tol = 1e-8);

/// Counting function of the ramification divisor (zeros of the
/// spherical-derivative numerator f0 f1' - f1 f0').
double ramification_counting(const MeromorphicMap& f, double r0, double r,
                             double zero_tol = 1e-6);

struct TargetColumns {
    SpherePoint target = SpherePoint::zero();
    double m = 0.0;
    double N = 0.0;
    double Nbar = 0.0;
};

/// Per-radius record of every function the verifier consumes.
struct NevanlinnaRow {
    double r = 0.0;
    double T_ahlfors = 0.0;
    double T_green = 0.0;
    double T_ricci = 0.0;
    double form_norm_inf = 1.0;
    double form_norm_sup = 1.0;
    std::vector<TargetColumns> targets;
    bool ok = true;
    std::string error;
};

struct RowOptions {
    double tol = 1e-8;      // quadrature tolerance
    double zero_tol = 1e-6; // zero-location cell tolerance
    bool with_green = true;
    bool with_ricci = true;
    int threads = 0;        // 0 = hardware concurrency
};

/// Sweeps the grid and fills one row per radius.  Zero tables are built
/// once at the top radius (and handed back through `zero_tables` when a
/// sink is given).  Rows are computed independently (possibly in
/// parallel) and reduced in grid order, so the output is deterministic.
std::vector<NevanlinnaRow> assemble_rows(const MeromorphicMap& f,
                                         const SurfaceModel& surface,
                                         const std::vector<SpherePoint>& targets,
                                         double r0, const std::vector<double>& grid,
                                         const RowOptions& opts = {},
                                         std::vector<TargetZeroSet>* zero_tables = nullptr);

} // namespace nevlab
