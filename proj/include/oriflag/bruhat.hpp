#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include "json.hpp"

#include "oriflag/weyl.hpp"

namespace oriflag {

using ElementSet = std::unordered_set<SignedPermutation, SignedPermutationHash>;
using Bitset = boost::dynamic_bitset<>;

// Subgroup generated by the given elements (closure under composition).
std::vector<SignedPermutation> generate_subgroup(const GroupContext& ctx, const std::vector<SignedPermutation>& gens);

// R = <v(theta), E> with M-bar_theta contained in E.
class ParabolicType {
public:
    static ParabolicType make(const GroupContext& ctx, std::vector<int> theta, std::vector<SignedPermutation> E);
    // Smallest admissible E, i.e. E = M-bar_theta.
    static ParabolicType minimal(const GroupContext& ctx, std::vector<int> theta);
    static ParabolicType trivial(const GroupContext& ctx) { return minimal(ctx, {}); }

    const GroupContext& context() const { return ctx_; }
    const std::vector<int>& theta() const { return theta_; }
    const std::vector<SignedPermutation>& E() const { return E_; }
    const std::vector<SignedPermutation>& elements() const { return elements_; }
    bool contains(const SignedPermutation& w) const { return members_.count(w) > 0; }
    std::size_t size() const { return elements_.size(); }
    std::vector<SignedPermutation> generators() const;

private:
    GroupContext ctx_;
    std::vector<int> theta_;
    std::vector<SignedPermutation> E_;
    std::vector<SignedPermutation> elements_;
    ElementSet members_;
};

// M-bar_theta = <v(theta)> intersected with M-bar.
std::vector<SignedPermutation> mbar_theta(const GroupContext& ctx, const std::vector<int>& theta);

struct ThetaE {
    std::vector<int> theta;
    std::vector<SignedPermutation> E;
};

ThetaE recover_theta_E(const GroupContext& ctx, const std::vector<SignedPermutation>& R);

// A_w: products over a reduced word of w with each letter deleted, kept or squared.
ElementSet lower_set(const SignedPermutation& w, DescentRule rule = DescentRule::Smallest);
bool leq_tilde(const SignedPermutation& a, const SignedPermutation& b);

enum class QuotientRoute { LeftForm, UnionOverRepresentatives };

class PositionSpace {
public:
    PositionSpace(const GroupContext& ctx, ParabolicType R, ParabolicType S,
                  QuotientRoute route = QuotientRoute::LeftForm);

    const GroupContext& context() const { return ctx_; }
    const ParabolicType& R() const { return R_; }
    const ParabolicType& S() const { return S_; }

    int size() const { return static_cast<int>(reps_.size()); }
    const SignedPermutation& representative(int c) const { return reps_.at(c); }
    const std::vector<SignedPermutation>& representatives() const { return reps_; }
    int class_of(const SignedPermutation& w) const;
    int rank_of(int c) const { return length(reps_.at(c)); }

    bool leq(int a, int b) const { return below_[b][a]; }
    const Bitset& below(int c) const { return below_[c]; }
    const Bitset& above(int c) const { return above_[c]; }
    // Classes ordered so that every class comes after everything below it.
    const std::vector<int>& linear_extension() const { return linear_extension_; }

    std::vector<int> class_members_count() const;

private:
    GroupContext ctx_;
    ParabolicType R_, S_;
    std::vector<SignedPermutation> reps_;
    std::unordered_map<SignedPermutation, int, SignedPermutationHash> class_of_;
    std::vector<Bitset> below_, above_;
    std::vector<int> linear_extension_;
};

// Classes below c computed as the union of A_{r w s} over r in R, s in S.
Bitset union_route_down_set(const PositionSpace& space, int c);

std::vector<std::pair<int, int>> covering_relations(const PositionSpace& space);

std::vector<SignedPermutation> conjugate_generator_set(const GroupContext& ctx);
bool folding_check(const SignedPermutation& a, const SignedPermutation& b);
bool folding_check(const SignedPermutation& a, const SignedPermutation& b, const ElementSet& Q);

class InvolutionAction {
public:
    InvolutionAction(const PositionSpace& space, const SignedPermutation& w0);

    const PositionSpace& space() const { return *space_; }
    const SignedPermutation& w0() const { return w0_; }
    int operator()(int c) const { return map_[c]; }
    const std::vector<int>& map() const { return map_; }
    bool has_fixed_point() const;

private:
    const PositionSpace* space_;
    SignedPermutation w0_;
    std::vector<int> map_;
};

// Oriented half-spaces in spheres, n = 2m+1: R has theta = Delta minus {alpha_m, alpha_m+1}
// and E = {m in M-bar : middle entry +1}; S is the oriented-line stabilizer; w0 is
// antidiagonal with -1 in the middle.
struct SphereExample {
    GroupContext ctx;
    ParabolicType R, S;
    SignedPermutation w0;
};
SphereExample sphere_example(int n);

std::string hasse_dot(const PositionSpace& space, const InvolutionAction* action = nullptr);
nlohmann::json space_json(const PositionSpace& space);
nlohmann::json type_json(const ParabolicType& t);

}  // namespace oriflag
