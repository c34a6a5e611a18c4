#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oriflag/flags.hpp"
#include "oriflag/ideals.hpp"

namespace oriflag {

// Free group generators given as n x n matrices, or as 2x2 matrices pushed through iota_n or b_k.
struct MatrixGroupSpec {
    int n = 0;
    int rank = 0;
    std::vector<Matrix> generators;  // as given
    std::string via = "direct";      // "direct", "irreducible" or "block:k"

    // The n x n images of the generators.
    std::vector<Matrix> images(double eps = kDefaultEps) const;
};

MatrixGroupSpec parse_group_spec(const nlohmann::json& j);
MatrixGroupSpec load_group_spec(const std::string& path);
nlohmann::json group_spec_json(const MatrixGroupSpec& spec);

// Letters are +-(g+1) for generator g.
using Word = std::vector<int>;

// Freely reduced words of length 1..L, by length, then letters in the order 1, -1, 2, -2, ...
std::vector<Word> reduced_words(int rank, int L);
bool cyclically_reduced(const Word& w);
std::string word_string(const Word& w);
Matrix evaluate_word(const std::vector<Matrix>& gens, const std::vector<Matrix>& inverses, const Word& w);

struct AttractingOptions {
    int iters = 200;
    double tol = 1e-12;
    // Base flag of the power iteration; empty means iota_n of a fixed rotation.
    std::optional<Matrix> base;
};

Matrix default_base(int n);
// Limit of canonicalize(g^(2m) base). Raises NotProximal if it does not settle on an
// attracting flag.
OrientedFlag attracting_flag(const Matrix& g, const AttractingOptions& opts = {});
// Same for g = factors[0] * factors[1] * ..., without forming the product.
OrientedFlag attracting_flag(const std::vector<Matrix>& factors, const AttractingOptions& opts = {});

struct LimitSample {
    Word word;
    OrientedFlag flag;
};

struct SampleOptions {
    AttractingOptions attracting;
    // Use every reduced word instead of only cyclically reduced ones.
    bool all_reduced_words = false;
    std::optional<SignedPermutation> twist;
};

struct LimitSet {
    std::vector<LimitSample> samples;
    int skipped = 0;  // words failing the proximality check
};

LimitSet sample_limit_set(const MatrixGroupSpec& spec, int L, const SampleOptions& opts = {});

// Union over sample flags f of {p : pos(f, p) in I}, for spaces where the position only
// depends on the oriented line p.
class RemovedSet {
public:
    RemovedSet(const Ideal& ideal, std::vector<OrientedFlag> flags, double tol);

    // p need not be normalized.
    bool contains(const Vector& p) const;
    // Class of pos(f, p); entries of f^T p below tol * |p| count as zero.
    int position(const OrientedFlag& f, const Vector& p) const;
    std::size_t flag_count() const { return rows_.size() / (n_ * n_); }

private:
    int n_;
    double tol_;
    std::vector<double> rows_;  // transposed rotations, row-major, one after another
    std::vector<int> table_;    // (row, sign) -> class
    std::vector<char> in_ideal_;
};

// Throws UnsupportedSpace unless every element with first column +e1 lies in S.
void require_line_space(const PositionSpace& space);

bool k_membership(const OrientedSubspace& p, const std::vector<LimitSample>& samples, const Ideal& ideal,
                  double tol = kDefaultEps);

// The ideal generated by the position with first column +e_(m+1), n = 2m+1.
Ideal positive_half_ideal(const PositionSpace& space);

struct RasterImage {
    int width = 0, height = 0;
    std::vector<std::uint8_t> pixels;  // RGB, row-major

    std::string ppm() const;
    void write_ppm(const std::string& path) const;
};

struct RenderOptions {
    int width = 400, height = 200;
    // Orthonormal frame (columns) for the sphere coordinates; identity by default.
    std::optional<Matrix> frame;
    // Membership tolerance; non-positive means 0.75 pixel heights in angle.
    double tol = 0;
    int jobs = 1;
};

// Frame whose third axis is the axis of the light cone x2^2 = 2 x1 x3.
Matrix light_cone_frame();

// Equirectangular picture of S^2; dark pixels are in the removed set.
RasterImage render_sphere(const Ideal& ideal, const std::vector<OrientedFlag>& flags, const RenderOptions& opts = {});

}  // namespace oriflag
