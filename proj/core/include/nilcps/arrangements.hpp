#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcps/lp.hpp"

namespace nilcps {

// Finite set of affine hyperplanes in R^dim. family[i] in 1..dim labels
// Beck-structured instances; empty when unlabelled.
struct Arrangement {
    int dim = 0;
    std::vector<HyperplaneH> planes;
    std::vector<int> family;

    std::size_t size() const { return planes.size(); }
    // throws ValidationError on dimension mismatch, zero normals or repeated planes
    void validate() const;
};

class ArrangementCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vertex {
    GroupPoint point;
    int a = 0;                // number of hyperplanes through the point
    std::vector<int> planes;  // their indices
};

// intersections of d-subsets meeting in a single point of the closed body B
// (pass nullptr for the whole space), deduplicated, sorted canonically
std::vector<Vertex> vertices_in_B(const Arrangement& arr, const Polytope* B);

// regions of the open body minus the arrangement, by recursive insertion
std::int64_t count_regions_in_B(const Arrangement& arr, const Polytope& B, std::size_t cap = 1000000);

// coefficient k is the coefficient of t^k; subsets central w.r.t. the open body
std::vector<std::int64_t> characteristic_polynomial_wrt_B(const Arrangement& arr, const Polytope& B,
                                                          std::size_t cap = 20);
// (-1)^d chi(-1)
std::int64_t regions_from_chi(const std::vector<std::int64_t>& chi, int d);

// number of flats meeting the open body, indexed by dimension 0..d
std::vector<std::int64_t> flats_in_B(const Arrangement& arr, const Polytope& B, std::size_t cap = 20);

// true iff the plane meets the interior of B
bool meets_interior(const HyperplaneH& P, const Polytope& B);

struct IncidenceProfile {
    int n = 0;
    std::vector<Vertex> vertices;
    std::vector<std::int64_t> t;       // t[k] = #{p : a(p) >= k}, k = 0..n
    std::vector<std::int64_t> t_star;  // t_star[k] = #{p : k <= a(p) < 2k}
};
IncidenceProfile incidence_profile(const Arrangement& arr, const Polytope* B);

struct BoundCheck {
    std::string bound;  // "pairs", "large-k", "szemeredi-trotter"
    int k = 0;
    std::int64_t value = 0;
    double limit = 0;
    bool pass = true;
};
struct BeckReport {
    std::vector<BoundCheck> checks;
    bool all_pass() const;
    int violations() const;
};
// t(n,k) <= n(n-1)/(k(k-1)); t(n,k) < 2n/k for k > sqrt(2n); t(n,k) < beta n^2/k^3 for 3 <= k <= sqrt(n)
BeckReport check_beck_bounds(const IncidenceProfile& profile, int n);
inline const Rational kBeckBeta = Rational(125, 8);

// total incidences against 2.5 (P^{2/3} L^{2/3} + P + L)
struct IncidenceCheck {
    std::int64_t incidences = 0;
    double limit = 0;
    bool pass = true;
};
IncidenceCheck szemeredi_trotter_check(const IncidenceProfile& profile, int lines);

// c_2 = 1 / (16 C(2^10, 2)); for d >= 3 the induction recurrence with epsilon = delta = 1
Rational beck_constant(int d);

struct BeckFamilyResult {
    std::int64_t vertex_count = 0;
    bool certified = false;
    Rational constant;       // c_d
    Rational required;       // c_d n^d
    std::string violation;   // first failed hypothesis, empty when none
};
BeckFamilyResult beck_family_check(const Arrangement& arr, const Polytope& B, const Rational& c,
                                   std::uint64_t seed = 1);

// sum_{i=0}^d C(n, i)
mpz_class schlafli_bound(std::int64_t n, int d);

// "a1 ... ad | b" per line after a first line holding d
Arrangement parse_arrangement(const std::string& text);
std::string arrangement_to_text(const Arrangement& arr);
// same syntax, each line a half-space <a, x> <= b
Polytope parse_body(const std::string& text);
std::string body_to_text(const Polytope& B);

}  // namespace nilcps
