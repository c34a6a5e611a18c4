#include "oriflag/ideals.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "oriflag/errors.hpp"

namespace oriflag {

bool is_down_closed(const PositionSpace& space, const Bitset& members) {
    for (auto c = members.find_first(); c != Bitset::npos; c = members.find_next(c))
        if (!space.below(static_cast<int>(c)).is_subset_of(members)) return false;
    return true;
}

Ideal::Ideal(const PositionSpace& space, Bitset members) : space_(&space), members_(std::move(members)) {
    require(static_cast<int>(members_.size()) == space.size(), ErrorCode::RankMismatch, "bitset size");
    require(is_down_closed(space, members_), ErrorCode::NotAnIdeal, "set is not downward closed");
}

Ideal Ideal::generated_by(const PositionSpace& space, const std::vector<int>& classes) {
    Bitset b(space.size());
    for (int c : classes) b |= space.below(c);
    return Ideal(space, b);
}

Ideal Ideal::full(const PositionSpace& space) {
    Bitset b(space.size());
    b.set();
    return Ideal(space, b);
}

std::vector<int> Ideal::classes() const {
    std::vector<int> out;
    for (auto c = members_.find_first(); c != Bitset::npos; c = members_.find_next(c))
        out.push_back(static_cast<int>(c));
    return out;
}

std::vector<std::string> Ideal::encodings() const {
    std::vector<std::string> out;
    for (int c : classes()) out.push_back(space_->representative(c).encode());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void require_same_space(const Ideal& I, const InvolutionAction& action) {
    require(&I.space() == &action.space(), ErrorCode::InvalidArgument, "ideal and action live on different spaces");
}

}  // namespace

bool is_fat(const Ideal& I, const InvolutionAction& action) {
    require_same_space(I, action);
    for (int c = 0; c < I.space().size(); ++c)
        if (!I.contains(c) && !I.contains(action(c))) return false;
    return true;
}

bool is_slim(const Ideal& I, const InvolutionAction& action) {
    require_same_space(I, action);
    for (int c = 0; c < I.space().size(); ++c)
        if (I.contains(c) && I.contains(action(c))) return false;
    return true;
}

bool is_balanced(const Ideal& I, const InvolutionAction& action) { return is_fat(I, action) && is_slim(I, action); }

Ideal complement_of_image(const Ideal& I, const InvolutionAction& action) {
    require_same_space(I, action);
    Bitset b(I.space().size());
    for (int c = 0; c < I.space().size(); ++c)
        if (!I.contains(action(c))) b.set(c);
    return Ideal(I.space(), b);
}

Ideal right_translate(const Ideal& I, const SignedPermutation& m) {
    require(in_mbar(m), ErrorCode::NotInMbar, m.encode() + " is not in M-bar");
    const PositionSpace& space = I.space();
    Bitset b(space.size());
    for (int c : I.classes()) b.set(space.class_of(compose(space.representative(c), m)));
    return Ideal(space, b);
}

namespace {

struct Search {
    const PositionSpace& space;
    const InvolutionAction& sigma;
    const std::vector<int>& order;
    std::vector<Bitset> up_of_image;  // up(sigma(x)) = sigma(down(x))

    struct State {
        Bitset in, out;
        std::size_t pos = 0;
    };

    // Advances pos to the first undecided class; false when all are decided.
    bool next_undecided(State& s) const {
        while (s.pos < order.size()) {
            const int x = order[s.pos];
            if (!s.in[x] && !s.out[x]) return true;
            ++s.pos;
        }
        return false;
    }

    bool choose(const State& s, int y, State& child) const {
        child.in = s.in | space.below(y);
        child.out = s.out | up_of_image[y];
        child.pos = s.pos;
        return !child.in.intersects(child.out);
    }

    void run(State s, std::vector<Bitset>& found) const {
        if (!next_undecided(s)) {
            found.push_back(s.in);
            return;
        }
        const int x = order[s.pos];
        State child;
        for (int y : {x, sigma(x)}) {
            if (choose(s, y, child)) run(child, found);
        }
    }

    // Breadth-first split into independent subtrees.
    std::vector<State> frontier(State root, std::size_t target, std::vector<Bitset>& found) const {
        std::vector<State> level{std::move(root)};
        while (level.size() < target) {
            std::vector<State> next;
            bool grew = false;
            for (auto& s : level) {
                if (!next_undecided(s)) {
                    found.push_back(s.in);
                    continue;
                }
                const int x = order[s.pos];
                State child;
                for (int y : {x, sigma(x)})
                    if (choose(s, y, child)) next.push_back(child);
                grew = true;
            }
            level = std::move(next);
            if (!grew || level.empty()) break;
        }
        return level;
    }
};

bool bitset_less(const Bitset& a, const Bitset& b) {
    auto ia = a.find_first(), ib = b.find_first();
    while (ia != Bitset::npos && ib != Bitset::npos) {
        if (ia != ib) return ia < ib;
        ia = a.find_next(ia);
        ib = b.find_next(ib);
    }
    return ia == Bitset::npos && ib != Bitset::npos;
}

}  // namespace

BalancedCensus enumerate_balanced(const InvolutionAction& action, const EnumerateOptions& opts) {
    const PositionSpace& space = action.space();
    const int N = space.size();
    std::vector<int> order = opts.order.empty() ? space.linear_extension() : opts.order;
    require(static_cast<int>(order.size()) == N, ErrorCode::InvalidArgument, "order must list every class");

    Search search{space, action, order, {}};
    search.up_of_image.reserve(N);
    for (int x = 0; x < N; ++x) search.up_of_image.push_back(space.above(action(x)));

    std::vector<Bitset> found;
    Search::State root{Bitset(N), Bitset(N), 0};
    if (!action.has_fixed_point()) {
        const int jobs = std::max(1, opts.jobs);
        if (jobs == 1) {
            search.run(root, found);
        } else {
            auto tasks = search.frontier(root, static_cast<std::size_t>(jobs) * 8, found);
            std::vector<std::vector<Bitset>> partial(tasks.size());
            std::size_t next = 0;
            std::mutex mu;
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) {
                pool.emplace_back([&] {
                    while (true) {
                        std::size_t i;
                        {
                            std::lock_guard<std::mutex> lock(mu);
                            if (next >= tasks.size()) return;
                            i = next++;
                        }
                        search.run(tasks[i], partial[i]);
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& p : partial) found.insert(found.end(), p.begin(), p.end());
        }
    }
    std::sort(found.begin(), found.end(), bitset_less);

    BalancedCensus census;
    for (auto& b : found) census.ideals.emplace_back(space, std::move(b));

    // right M-bar orbits
    std::map<Bitset, int> index;
    for (int i = 0; i < census.count(); ++i) index.emplace(census.ideals[i].members(), i);
    std::vector<int> parent(census.count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const auto mbar = mbar_elements(space.context());
    for (int i = 0; i < census.count(); ++i) {
        for (const auto& m : mbar) {
            auto it = index.find(right_translate(census.ideals[i], m).members());
            require(it != index.end(), ErrorCode::VerificationMismatch, "right translate of a balanced ideal is missing");
            const int a = find(i), b = find(it->second);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<int, std::vector<int>> blocks;
    for (int i = 0; i < census.count(); ++i) blocks[find(i)].push_back(i);
    for (auto& [root_id, members] : blocks) census.mbar_classes.push_back(std::move(members));
    return census;
}

Ideal minimal_fat_ideal(const InvolutionAction& action) {
    require(!action.has_fixed_point(), ErrorCode::FixedPointClass, "w0 action has a fixed point");
    const PositionSpace& space = action.space();
    const int N = space.size();
    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (space.rank_of(a) != space.rank_of(b)) return space.rank_of(a) > space.rank_of(b);
        return space.representative(a) < space.representative(b);
    });
    Bitset I(N);
    I.set();
    bool changed = true;
    while (changed) {
        changed = false;
        for (int c : order) {
            if (!I[c]) continue;
            Bitset strict_above = space.above(c);
            strict_above.reset(c);
            if (strict_above.intersects(I)) continue;  // not maximal
            const int s = action(c);
            if (s == c || !I[s]) continue;  // removal would break fatness
            I.reset(c);
            changed = true;
        }
    }
    Ideal out(space, I);
    require(is_balanced(out, action), ErrorCode::VerificationMismatch, "minimal fat ideal is not balanced");
    return out;
}

namespace {

void grassmannian_range(int n, int k) {
    require(n >= 3, ErrorCode::InvalidArgument, "n must be at least 3");
    require(k >= 1 && k <= n - 1, ErrorCode::IndexOutOfRange, "k must lie in 1..n-1");
}

}  // namespace

bool grassmannian_exists(int n, int k) {
    grassmannian_range(n, k);
    if (n % 2 == 0) return k % 2 == 1;
    return (k * (n + k + 2) / 2) % 2 == 1;
}

bool grassmannian_fixed_point_oracle(int n, int k) {
    grassmannian_range(n, k);
    // states (eps, {i_1 < ... < i_k}); only symmetric subsets can be fixed
    std::vector<int> subset(k);
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + k, true);
    do {
        int j = 0;
        for (int i = 0; i < n; ++i)
            if (choose[i]) subset[j++] = i + 1;
        for (int eps : {1, -1}) {
            long exponent = static_cast<long>(k) * (k - 1) / 2;
            for (int i : subset) exponent += i + 1;
            const int image_eps = (exponent % 2 == 0 ? 1 : -1) * eps;
            std::vector<int> image(k);
            for (int t = 0; t < k; ++t) image[t] = n + 1 - subset[k - 1 - t];
            if (image == subset && image_eps == eps) return false;
        }
    } while (std::prev_permutation(choose.begin(), choose.end()));
    return true;
}

nlohmann::json ideal_json(const Ideal& I) { return I.encodings(); }

nlohmann::json census_json(const BalancedCensus& census) {
    nlohmann::json ideals = nlohmann::json::array();
    for (const auto& I : census.ideals) ideals.push_back(ideal_json(I));
    return {{"count", census.count()}, {"ideals", ideals}, {"mbar_classes", census.mbar_classes}};
}

}  // namespace oriflag
