#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilcps/scalar.hpp"

namespace nilcps {

enum class NormKind { WeightedMax, Koranyi };

struct Bracket {
    int i, j, k;  // [e_i, e_j] has coefficient c on e_k (i < j after normalization)
    Rational c;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GroupSpec {
public:
    GroupSpec() = default;
    // brackets may list (i,j,k,c) with i > j; the antisymmetric partner is implied
    GroupSpec(int n, std::vector<Rational> weights, std::vector<Bracket> brackets,
              NormKind norm = NormKind::WeightedMax);

    static GroupSpec abelian(int n);
    static GroupSpec heisenberg(NormKind norm = NormKind::WeightedMax);
    // [e1,e2]=e3, [e1,e3]=e4 with weights 1,1,2,3 (3-step, fails validation)
    static GroupSpec filiform4();

    int dim() const { return n_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const std::vector<Bracket>& brackets() const { return brackets_; }  // i < j, c != 0
    NormKind norm() const { return norm_; }
    bool is_abelian() const { return brackets_.empty(); }
    Rational homdim() const;
    const Rational& c(int i, int j, int k) const { return table_[(i * n_ + j) * n_ + k]; }

    // antisymmetry is structural; these report the remaining invariants
    bool jacobi_holds() const;
    bool dilation_compatible() const;
    bool is_two_step() const { return two_step_; }
    // throws ValidationError unless weights sorted positive, Jacobi, dilation compatible, 2-step
    void validate() const;
    bool koranyi_layout() const;

    friend bool operator==(const GroupSpec& a, const GroupSpec& b);

private:
    int n_ = 0;
    std::vector<Rational> weights_;
    std::vector<Bracket> brackets_;
    std::vector<Rational> table_;
    NormKind norm_ = NormKind::WeightedMax;
    bool two_step_ = true;
    bool compute_two_step() const;
};

using GroupPoint = std::vector<ExactScalar>;

GroupPoint identity(const GroupSpec& spec);
GroupPoint make_point(std::initializer_list<long> v);
GroupPoint lie_bracket(const GroupSpec& spec, const GroupPoint& x, const GroupPoint& y);
GroupPoint bch_multiply(const GroupSpec& spec, const GroupPoint& x, const GroupPoint& y);
GroupPoint inverse(const GroupPoint& x);
GroupPoint dilate(const GroupSpec& spec, const Rational& r, const GroupPoint& x);
double quasi_norm(const GroupSpec& spec, const GroupPoint& x);
// |x * center^-1| < r decided exactly
bool ball_contains(const GroupSpec& spec, const Rational& r, const GroupPoint& center, const GroupPoint& x);
// |x| < r (ball about the identity)
bool norm_less(const GroupSpec& spec, const GroupPoint& x, const Rational& r);
Rational ball_volume(const GroupSpec& spec, const Rational& r);

// Heisenberg matrix coordinates (a,b,c) <-> exponential coordinates (a,b,c-ab/2)
GroupPoint matrix_to_exp(const GroupPoint& m);
GroupPoint exp_to_matrix(const GroupPoint& x);

// <normal, x> = offset
struct HyperplaneH {
    std::vector<ExactScalar> normal;
    ExactScalar offset;
    HyperplaneH() = default;
    HyperplaneH(std::vector<ExactScalar> n, ExactScalar b);
    // first nonzero normal entry = 1
    HyperplaneH canonical() const;
    bool contains(const GroupPoint& p) const;
    int dim() const { return int(normal.size()); }
    static int repr_compare(const HyperplaneH& a, const HyperplaneH& b);
    friend bool operator==(const HyperplaneH& a, const HyperplaneH& b) { return repr_compare(a, b) == 0; }
};

// <normal, x> <= offset
struct HalfSpace {
    std::vector<ExactScalar> normal;
    ExactScalar offset;
    // scaled so the first nonzero normal entry is +1 or -1
    HalfSpace canonical() const;
    ExactScalar slack(const GroupPoint& p) const;  // offset - <normal, p>
    HyperplaneH boundary() const { return HyperplaneH(normal, offset); }
};

ExactScalar dot(const std::vector<ExactScalar>& a, const std::vector<ExactScalar>& b);

// image x * P; for 2-step groups it is the plane {q : <n, x^-1 * q> = b}
HyperplaneH act_on_hyperplane(const GroupSpec& spec, const GroupPoint& x, const HyperplaneH& P);
HalfSpace act_on_halfspace(const GroupSpec& spec, const GroupPoint& x, const HalfSpace& P);
// point-wise image of the parametrized plane base + span(dirs) under left translation by x
void act_on_parametrization(const GroupSpec& spec, const GroupPoint& x, GroupPoint& base,
                            std::vector<GroupPoint>& dirs);

bool is_locally_two_step(const GroupSpec& spec);
double angle_between(const HyperplaneH& P, const HyperplaneH& Q);

// max of |x u x^-1| over u in B_eps(e); samples are drawn from the closed
// ball and the box corners are always included
double conjugation_distortion(const GroupSpec& spec, const GroupPoint& x, double eps, int samples,
                              std::uint64_t seed = 1);
// the same maximum over explicit samples
double max_conjugate_norm(const GroupSpec& spec, const GroupPoint& x, const std::vector<GroupPoint>& us);

std::string point_str(const GroupPoint& p);
int point_repr_compare(const GroupPoint& a, const GroupPoint& b);
struct PointReprLess {
    bool operator()(const GroupPoint& a, const GroupPoint& b) const { return point_repr_compare(a, b) < 0; }
};
struct PointHash {
    std::size_t operator()(const GroupPoint& p) const;
};

}  // namespace nilcps
