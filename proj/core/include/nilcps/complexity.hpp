#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcps/arrangements.hpp"
#include "nilcps/scheme.hpp"

namespace nilcps {

class InsufficientRadius : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sorted coefficient vectors of P_r(lambda) lambda^-1
using PatchClassKey = std::vector<std::vector<long>>;

// Model set points around the sample ball, indexed for patch queries.
class PatchSampler {
public:
    PatchSampler(const SchemeSpec& s, const Rational& R_sample, const Rational& r, const EnumerationOptions& opt = {});
    // lambda with |lambda| < R_sample, sorted by coefficients
    const std::vector<LatticePoint>& centres() const { return centres_; }
    // B_r(lambda) meet Lambda; throws InsufficientRadius when |lambda| >= R_sample
    std::vector<LatticePoint> patch(const LatticePoint& lambda) const;
    PatchClassKey key(const LatticePoint& lambda) const;
    const Rational& r() const { return r_; }

private:
    const SchemeSpec& s_;
    Rational R_, r_;
    NeighbourIndex index_;
    std::vector<LatticePoint> centres_;
    void check_radius(const LatticePoint& lambda) const;
};

// slab-of key: bit j set iff slab[j] * lambda is in the model set
using SlabKey = std::vector<std::uint64_t>;

struct CensusResult {
    std::int64_t p_hat = 0;          // classes among |lambda| < R
    std::int64_t p_hat_doubled = 0;  // classes among |lambda| < 2R
    std::int64_t points = 0;         // |Lambda meet B_R|
    bool saturated = false;
};

// Streams Lambda meet B_{2R} and keys each point by its slab-of vector
// (acceptance-domain route). Needs the slab at radius r.
CensusResult complexity_census(const SchemeSpec& s, const std::vector<LatticePoint>& slab_r, const Rational& R,
                               const EnumerationOptions& opt = {});
CensusResult complexity_census(const SchemeSpec& s, const Rational& r, const Rational& R);

struct AcceptanceDomain {
    std::vector<GroupPoint> positive;  // mu with the domain inside mu * open W
    std::vector<GroupPoint> negative;  // mu with the domain inside mu * W^C
    GroupPoint witness;                // tau(lambda)
    // exact test of a point of H against every translate
    bool contains(const SchemeSpec& s, const GroupPoint& h) const;
};
AcceptanceDomain acceptance_domain(const SchemeSpec& s, const std::vector<LatticePoint>& slab_r,
                                   const LatticePoint& lambda);

// Census cross-checks on the points of a PatchSampler
struct ConsistencyReport {
    std::int64_t points = 0;
    std::int64_t classes = 0;
    std::int64_t partition_mismatches = 0;  // patch-key vs slab-of partitions
    std::int64_t tiling_failures = 0;       // points not in exactly one domain
};
ConsistencyReport check_census_consistency(const SchemeSpec& s, const PatchSampler& sampler,
                                           const std::vector<LatticePoint>& slab_r);

// -------------------------------------------------------------- window geometry

// ball B_rho(c) = B_rho(e) c as a polytope (weighted-max norm)
Polytope ball_polytope(const GroupSpec& h, const GroupPoint& c, const Rational& rho);

struct WindowParameters {
    GroupPoint c_W;
    Rational I_W;                 // rational lower bound, exact when attained
    double I_W_value = 0;
    double O_W = 0;
    std::vector<double> F_i;      // certified lower bounds on the face sizes
    double F_W = 0;
    std::vector<GroupPoint> p_i;  // face centres
    std::vector<int> family;      // dim(H) faces whose normals are independent
};
WindowParameters window_parameters(const SchemeSpec& s);

// s * boundary_i W cuts the polytope B fully / all-round
bool cuts_fully(const SchemeSpec& s, const GroupPoint& shift, int face, const Polytope& B);
bool cuts_all_round(const SchemeSpec& s, const GroupPoint& shift, int face, const Polytope& B);

struct GoodPair {
    Rational k, h;
    double distortion_sampled = 0;  // max |a x a^-1| over the samples
    double distortion_bound = 0;    // analytic upper bound over the boxes
    int halvings = 0;
};
struct GoodPairOptions {
    int samples = 10000;  // conjugation samples for condition iii
    int shifts = 24;      // sampled s per face for condition iv, corners included
    int max_halvings = 40;
    std::uint64_t seed = 1;
};
class GoodPairFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
// halving search from (I_W/4, I_W/2)
GoodPair good_pair_search(const SchemeSpec& s, const WindowParameters& wp, const GoodPairOptions& opt = {});
// re-check all four conditions; returns the first violated one or an empty string
std::string verify_good_pair(const SchemeSpec& s, const WindowParameters& wp, const Rational& k, const Rational& h,
                             const GoodPairOptions& opt = {});

// U_i(r): lattice points with |gamma| < r and tau(gamma) in B_k(c_W p_i^-1)
std::vector<LatticePoint> u_i_of_r(const SchemeSpec& s, const WindowParameters& wp, int face, const Rational& r,
                                   const GoodPair& gp);

struct RegionBound {
    std::int64_t regions = 0;
    std::int64_t planes = 0;
    bool certified = true;  // lower bound only: incidence and multiplicity checks passed
    std::vector<std::string> notes;
};
// regions of W minus the planes mu * P_i over the slab
RegionBound upper_bound_regions(const SchemeSpec& s, const std::vector<LatticePoint>& slab_r, std::size_t cap = 100000);
// regions of B_h(c_W) minus s * P_i over s in U_i(r)
RegionBound lower_bound_regions(const SchemeSpec& s, const WindowParameters& wp, const Rational& r, const GoodPair& gp,
                                const Rational& concentration = Rational(1, 101), std::uint64_t seed = 1);

struct Fit {
    double slope = 0, intercept = 0, residual = 0;
};
// least squares on (log r, log count); residual is the RMS of log residuals
Fit exponent_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace nilcps
