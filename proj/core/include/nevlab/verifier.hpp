#pragma once

#include "nevlab/nevanlinna.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nevlab {

/// Weight gamma on (0, R) with divergent integral, used to measure
/// exceptional radius sets.
class GammaWeight {
public:
    static GammaWeight one();
    /// gamma(r) = 1/(R - r) for a finite canonical radius R.
    static GammaWeight inverse_gap(double s_radius);
    static GammaWeight custom(std::string name, std::function<double(double)> fn);

    double operator()(double r) const;
    const std::string& kind() const { return kind_; }

private:
    GammaWeight(std::string kind, std::function<double(double)> fn)
        : kind_(std::move(kind)), fn_(std::move(fn)) {}
    std::string kind_;
    std::function<double(double)> fn_;
};

std::vector<double> make_grid(double r_min, double r_max, int points, bool geometric);

/// gamma-measure of the grid cells owned by the flagged indices.
double exceptional_gamma_measure(const std::vector<double>& grid,
                                 const std::vector<bool>& violating,
                                 const GammaWeight& gamma);

// --- first main theorem ------------------------------------------------------

struct FmtVerdict {
    std::vector<double> grid;
    std::vector<double> residual; // T - m - N per usable radius
    double width = 0.0;           // max - min over the grid
    double bound = 1.0;
    int skipped = 0; // radii lost to numeric errors
    bool pass = false;
};

/// Residual curve r -> T(r) - m(r,a) - N(r,a) from assembled rows.
FmtVerdict fmt_residual(const std::vector<NevanlinnaRow>& rows, size_t target_index,
                        double bound = 1.0);

/// Convenience wrapper that assembles the rows itself.
FmtVerdict fmt_residual(const MeromorphicMap& f, const SurfaceModel& surface,
                        const SpherePoint& a, double r0, const std::vector<double>& grid,
                        double bound = 1.0, const RowOptions& opts = {});

// --- second main theorem ------------------------------------------------------

struct SmtVerdict {
    std::vector<double> grid;
    std::vector<double> lhs;          // (q-2) T + T_ricci (or without ricci, curvature form)
    std::vector<double> rhs;          // sum Nbar + fitted envelope
    std::vector<double> slack;        // rhs - lhs
    std::vector<double> envelope_raw; // log+ T + log+ ||S||sup + log+ gamma + delta log+ r
    std::vector<double> T;            // raw columns kept for inspection
    std::vector<double> gamma_values;
    std::vector<double> norm_sup;
    std::vector<double> exceptional;  // violating radii
    double gamma_measure_of_exceptional = 0.0;
    double fitted_error_constant = 0.0;   // c
    double fitted_offset_constant = 0.0;  // c'
    double delta = 0.0;
    double coverage = 0.99;
    int skipped = 0;
    bool pass = false;
    // curvature-bounded form extras
    bool curvature_form = false;
    std::vector<double> ricci;
    std::vector<double> ricci_lower_bound; // -C r^2 / (4 ||S||_inf)
    bool ricci_bound_holds = true;
    bool ricci_nonpositive = true;
};

SmtVerdict smt_check(const std::vector<NevanlinnaRow>& rows, const GammaWeight& gamma,
                     double delta, double coverage = 0.99);

SmtVerdict smt_check(const MeromorphicMap& f, const std::vector<SpherePoint>& targets,
                     const SurfaceModel& surface, const GammaWeight& gamma, double delta,
                     double r0, const std::vector<double>& grid, double coverage = 0.99,
                     const RowOptions& opts = {});

/// Curvature-bounded form: the Ricci term is replaced by the explicit
/// lower bound -C r^2/(4 ||S||_{r,inf}) moved into the envelope, the
/// sampled curvature is verified against [-C, 0], and the per-radius
/// bound on the Ricci characteristic is asserted.
SmtVerdict smt_check_curvature_form(const std::vector<NevanlinnaRow>& rows,
                                    const SurfaceModel& surface, double curvature_bound,
                                    const GammaWeight& gamma, double delta,
                                    double coverage = 0.99);

SmtVerdict smt_check_curvature_form(const MeromorphicMap& f,
                                    const std::vector<SpherePoint>& targets,
                                    const SurfaceModel& surface, double curvature_bound,
                                    const GammaWeight& gamma, double delta, double r0,
                                    const std::vector<double>& grid, double coverage = 0.99,
                                    const RowOptions& opts = {});

// --- defects ------------------------------------------------------------------

struct DefectEstimate {
    SpherePoint target = SpherePoint::zero();
    std::vector<double> grid;
    std::vector<double> ratio; // Nbar / T
    double limsup_estimate = 0.0; // max ratio over the top decile
    double delta_bar = 0.0;       // 1 - limsup estimate
};

DefectEstimate defect(const std::vector<NevanlinnaRow>& rows, size_t target_index);
DefectEstimate defect(const MeromorphicMap& f, const SurfaceModel& surface,
                      const SpherePoint& a, double r0, const std::vector<double>& grid,
                      const RowOptions& opts = {});

struct DefectRelationVerdict {
    std::vector<DefectEstimate> defects;
    double sum = 0.0;
    double bound = 2.0; // genus-zero target
    double tolerance = 0.05;
    double growth_hypothesis_ratio = 0.0; // top-decile max, should vanish
    bool growth_warning = false;
    bool pass = false;
};

DefectRelationVerdict defect_relation_check(const std::vector<NevanlinnaRow>& rows,
                                            const SurfaceModel& surface,
                                            double curvature_bound,
                                            const GammaWeight& gamma);

// --- calculus and growth lemmas -------------------------------------------------

struct CalculusVerdict {
    std::vector<double> grid;
    std::vector<double> lhs; // E_k
    std::vector<double> rhs; // envelope * A_k^{(1+delta)^2}
    std::vector<double> exceptional;
    double gamma_measure_of_exceptional = 0.0;
    double budget = 2.0;
    int skipped = 0;
    bool vacuous = false;
    bool pass = false;
};

/// Verifies E_k(r) <= ||S||_{r,sup} r^delta gamma^{2+delta}(r) / (2 pi)
///   * A_k(r)^{(1+delta)^2}
/// on the grid, for a nonnegative locally integrable density k.
CalculusVerdict calculus_lemma_check(const std::function<double(const Complex&)>& k,
                                     const SurfaceModel& surface, const GammaWeight& gamma,
                                     double delta, double r0, const std::vector<double>& grid,
                                     double budget = 2.0, double abs_tol = 1e-8);

struct BorelVerdict {
    std::vector<double> grid;
    std::vector<double> derivative;
    std::vector<double> allowed; // h^{1+delta} gamma
    std::vector<double> exceptional;
    double gamma_measure_full = 0.0;
    double gamma_measure_coarse = 0.0; // same check on half resolution
    double budget = 2.0;
    bool pass = false;
};

/// Checks h'(r) <= h(r)^{1+delta} gamma(r) outside a gamma-finite set,
/// for a positive nondecreasing sampled curve.
BorelVerdict borel_growth_check(const std::vector<double>& grid,
                                const std::vector<double>& h, const GammaWeight& gamma,
                                double delta, double budget = 2.0);

} // namespace nevlab
