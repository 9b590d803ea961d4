#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "nilcps/group.hpp"
#include "nilcps/lp.hpp"

namespace nilcps {

enum class ModuleChart { Exponential, HeisenbergMatrix };

// Cut-and-project scheme with lattice {(g, sigma g, ..., sigma^{d-1} g)} where
// g runs over Z[alpha]^n in the module chart. H has (d-1) * n coordinates:
// H coordinate (k-1) * n + i is sigma^k of G coordinate i.
struct SchemeSpec {
    std::string name;
    GroupSpec g;
    GroupSpec h;
    const Field* field = nullptr;
    ModuleChart chart = ModuleChart::Exponential;
    Polytope window;  // H exponential coordinates, rational half-spaces

    int n() const { return g.dim(); }
    int degree() const { return field->degree(); }
    int copies() const { return field->degree() - 1; }
    // throws ValidationError with a description of the first failure
    void validate() const;
    std::vector<HyperplaneH> faces() const;
};

struct LatticePoint {
    std::vector<long> coeffs;  // n * degree integers, coordinate-major, module chart
    GroupPoint g_part;
    GroupPoint h_part;
};

class RegularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
    long coefficient_cap = 1L << 40;  // abort when a coefficient range exceeds this
    long candidate_cap = 2000000000L;
    // throws BudgetExceeded once passed (checked every few thousand candidates)
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// chart conversions on the G side
GroupPoint chart_to_exp(const SchemeSpec& s, const GroupPoint& module);
GroupPoint exp_to_chart(const SchemeSpec& s, const GroupPoint& x);

// exact lattice point from coefficients
LatticePoint lattice_point(const SchemeSpec& s, const std::vector<long>& coeffs);
// coefficients of a G point of Gamma_G; throws std::invalid_argument when not in Gamma_G
std::vector<long> coefficients_of(const SchemeSpec& s, const GroupPoint& g);

// Double-filtered streaming enumeration. Calls f for a superset of the lattice
// points with |g_i| < gbound_i and h in the closed box; g and h carry
// rigorous error bounds.
void for_each_candidate(const SchemeSpec& s, const std::vector<double>& gbound,
                        const std::vector<std::pair<double, double>>& hbox,
                        const std::function<void(const std::vector<long>&, const std::vector<Approx>&,
                                                 const std::vector<Approx>&)>& f,
                        const EnumerationOptions& opt = {});

std::vector<double> g_box_for_radius(const SchemeSpec& s, const Rational& r);
std::vector<std::pair<double, double>> bounding_box(const Polytope& p);

// exact: |g| < r_G and h in region_H (closed), sorted by coefficients
std::vector<LatticePoint> enumerate_lattice(const SchemeSpec& s, const Rational& r_G, const Polytope& region_H,
                                            const EnumerationOptions& opt = {});

GroupPoint star_map(const SchemeSpec& s, const GroupPoint& lambda);

// |lambda| < R and tau(lambda) in the open window; throws RegularityError
// when an enumerated point projects onto the window boundary
std::vector<LatticePoint> model_set(const SchemeSpec& s, const Rational& R, const EnumerationOptions& opt = {});

// tau(lambda) in mu^-1 * open window
bool window_shift_membership(const SchemeSpec& s, const GroupPoint& mu_h, const GroupPoint& tau_lambda);
// (mu * W) meets W
bool ww_inverse_contains(const SchemeSpec& s, const GroupPoint& mu_h);
// box containing W W^-1
std::vector<std::pair<double, double>> ww_inverse_box(const SchemeSpec& s);

// lattice points with |gamma| < r and h-part in W W^-1; contains the identity
std::vector<LatticePoint> slab(const SchemeSpec& s, const Rational& r, const EnumerationOptions& opt = {});
// mu in Gamma_G with |mu| < r and mu * lambda in the model set
std::vector<LatticePoint> displacements(const SchemeSpec& s, const LatticePoint& lambda, const Rational& r);

struct SlabSplit {
    std::vector<LatticePoint> in;   // gamma^-1 is a displacement
    std::vector<LatticePoint> out;  // the rest of the slab
};
SlabSplit slab_of(const SchemeSpec& s, const LatticePoint& lambda, const Rational& r);
SlabSplit slab_of(const SchemeSpec& s, const std::vector<LatticePoint>& slab_points, const LatticePoint& lambda);

Rational growth_ratio(const SchemeSpec& s, const Rational& r, const Polytope& region_H);

// Streamed model set point: approximations with rigorous error bounds plus
// the exact lattice point built on demand
struct ModelCandidate {
    const std::vector<long>& q;
    const std::vector<Approx>& g;
    const std::vector<Approx>& h;
    const std::function<const LatticePoint&()>& exact;
};
// model set points with |g_i| < gbound_i; throws RegularityError on the window boundary
void for_each_model_point(const SchemeSpec& s, const std::vector<double>& gbound,
                          const std::function<void(const ModelCandidate&)>& f, const EnumerationOptions& opt = {});
// |g| < r decided by the approximation when possible, exactly otherwise
bool filtered_norm_less(const SchemeSpec& s, const std::vector<Approx>& g, const Rational& r,
                        const std::function<GroupPoint()>& exact);

// model set points with |g_i| < gbound_i (box instead of ball)
std::vector<LatticePoint> model_set_box(const SchemeSpec& s, const std::vector<double>& gbound,
                                        const EnumerationOptions& opt = {});

// Hash grid over model set points in G for patch queries (2-step G only)
class NeighbourIndex {
public:
    NeighbourIndex(const SchemeSpec& s, std::vector<LatticePoint> pts, const Rational& r);
    // coefficient vectors of nu * lambda^-1 over model set points nu with |nu lambda^-1| < r, sorted
    std::vector<std::vector<long>> patch_key(const GroupPoint& lambda) const;
    // G box that must be enumerated so that patches around |lambda| < R are complete
    static std::vector<double> covering_box(const SchemeSpec& s, const Rational& R, const Rational& r);
    const std::vector<LatticePoint>& points() const { return pts_; }

private:
    const SchemeSpec& s_;
    std::vector<LatticePoint> pts_;
    std::vector<std::vector<double>> gd_;
    Rational r_;
    std::vector<double> cell_;
    std::unordered_map<std::string, std::vector<int>> grid_;
    std::string cell_key(const std::vector<long>& c) const;
};

struct FlcResult {
    long count = 0;
    long count_doubled = 0;
    bool saturated = false;
};
// distinct B_r(e) meet Lambda lambda^-1 over lambda in Lambda meet B_R, via neighbour search in G
FlcResult check_flc(const SchemeSpec& s, const Rational& R_window, const Rational& r);

// Translated window tau(mu)^-1 * W with double approximations for fast tests
struct TranslatedWindow {
    std::vector<HalfSpace> hs;
    std::vector<std::vector<Approx>> n_approx;
    std::vector<Approx> b_approx;
    // strict membership; exact_point is built on demand when the filter is undecided
    bool contains_open(const std::vector<Approx>& h, const std::function<GroupPoint()>& exact_point) const;
};
TranslatedWindow translated_window(const SchemeSpec& s, const GroupPoint& x);

std::vector<Approx> approx_point(const GroupPoint& p);

}  // namespace nilcps
