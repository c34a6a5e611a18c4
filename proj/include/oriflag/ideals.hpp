#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "oriflag/bruhat.hpp"

namespace oriflag {

// Downward closed set of classes of a PositionSpace.
class Ideal {
public:
    Ideal(const PositionSpace& space, Bitset members);
    static Ideal generated_by(const PositionSpace& space, const std::vector<int>& classes);
    static Ideal empty(const PositionSpace& space) { return Ideal(space, Bitset(space.size())); }
    static Ideal full(const PositionSpace& space);

    const PositionSpace& space() const { return *space_; }
    const Bitset& members() const { return members_; }
    bool contains(int c) const { return members_[c]; }
    std::size_t size() const { return members_.count(); }
    std::vector<int> classes() const;
    // Sorted encodings of the class representatives.
    std::vector<std::string> encodings() const;

    bool operator==(const Ideal& o) const { return space_ == o.space_ && members_ == o.members_; }

private:
    const PositionSpace* space_;
    Bitset members_;
};

bool is_down_closed(const PositionSpace& space, const Bitset& members);

bool is_fat(const Ideal& I, const InvolutionAction& action);
bool is_slim(const Ideal& I, const InvolutionAction& action);
bool is_balanced(const Ideal& I, const InvolutionAction& action);

// {x : x not in sigma(I)}
Ideal complement_of_image(const Ideal& I, const InvolutionAction& action);

// I * m for m in M-bar.
Ideal right_translate(const Ideal& I, const SignedPermutation& m);

struct BalancedCensus {
    std::vector<Ideal> ideals;
    // Orbits of the right M-bar action, as sorted lists of indices into ideals.
    std::vector<std::vector<int>> mbar_classes;

    int count() const { return static_cast<int>(ideals.size()); }
};

struct EnumerateOptions {
    int jobs = 1;
    // Linear extension used to pick the next undecided class; defaults to the space's own.
    std::vector<int> order;
};

BalancedCensus enumerate_balanced(const InvolutionAction& action, const EnumerateOptions& opts = {});

Ideal minimal_fat_ideal(const InvolutionAction& action);

bool grassmannian_exists(int n, int k);
bool grassmannian_fixed_point_oracle(int n, int k);

nlohmann::json census_json(const BalancedCensus& census);
nlohmann::json ideal_json(const Ideal& I);

}  // namespace oriflag
