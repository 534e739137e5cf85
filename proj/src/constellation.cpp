#include "bicmwb/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bicmwb {

namespace {

constexpr double kMergeDistance = 1e-12;
constexpr double kProbSumTol = 1e-12;

bool finite(cplx p) { return std::isfinite(p.real()) && std::isfinite(p.imag()); }

std::uint32_t gray_code(std::uint32_t k) { return k ^ (k >> 1); }

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(unsigned v) {
    int m = 0;
    while ((1u << m) < v) ++m;
    return m;
}

// Unit-energy M-PAM amplitudes in left-to-right order.
std::vector<double> pam_levels(unsigned M) {
    const double beta = std::sqrt(3.0 / (static_cast<double>(M) * M - 1.0));
    std::vector<double> levels(M);
    for (unsigned k = 0; k < M; ++k)
        levels[k] = beta * (2.0 * static_cast<double>(k) - (static_cast<double>(M) - 1.0));
    return levels;
}

} // namespace

Constellation::Constellation(std::vector<cplx> points, std::vector<double> probs) {
    if (points.empty()) throw std::invalid_argument("Constellation: needs at least one point");
    if (points.size() != probs.size())
        throw std::invalid_argument("Constellation: points and probs must have equal length");
    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!finite(points[i]))
            throw std::invalid_argument("Constellation: points must be finite");
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0))
            throw std::invalid_argument("Constellation: probabilities must be in [0, 1]");
        sum += probs[i];
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
        throw std::invalid_argument("Constellation: probabilities must sum to 1");

    // Coincident points are merged with summed probability.
    points_.reserve(points.size());
    probs_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool merged = false;
        for (std::size_t j = 0; j < points_.size(); ++j) {
            if (std::abs(points[i] - points_[j]) <= kMergeDistance) {
                probs_[j] += probs[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            points_.push_back(points[i]);
            probs_.push_back(probs[i]);
        }
    }
}

Constellation Constellation::uniform(std::vector<cplx> points) {
    const std::size_t n = points.size();
    const double p = n ? 1.0 / static_cast<double>(n) : 0.0;
    return Constellation(std::move(points), std::vector<double>(n, p));
}

Moments Constellation::moments() const {
    Moments m;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        m.mu1 += probs_[i] * points_[i];
        m.mu2 += probs_[i] * std::norm(points_[i]);
        m.mu2_pseudo += probs_[i] * points_[i] * points_[i];
    }
    return m;
}

Covariance2x2 Constellation::covariance() const {
    cplx mean{0.0, 0.0};
    for (std::size_t i = 0; i < points_.size(); ++i) mean += probs_[i] * points_[i];
    Covariance2x2 cov;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const double dr = points_[i].real() - mean.real();
        const double di = points_[i].imag() - mean.imag();
        cov.var_re += probs_[i] * dr * dr;
        cov.var_im += probs_[i] * di * di;
        cov.cov_re_im += probs_[i] * dr * di;
    }
    return cov;
}

Constellation Constellation::scaled(cplx factor) const {
    std::vector<cplx> pts(points_);
    for (auto& p : pts) p *= factor;
    return Constellation(std::move(pts), probs_);
}

bool Constellation::is_zero_mean_unit_energy(double tol) const {
    const Moments m = moments();
    return std::abs(m.mu1) <= tol && std::abs(m.mu2 - 1.0) <= tol;
}

LabeledConstellation::LabeledConstellation(std::vector<cplx> points,
                                           std::vector<std::uint32_t> labels)
    : base_(Constellation::uniform(points)), labels_(std::move(labels)) {
    const std::size_t M = points.size();
    if (M < 2 || !is_power_of_two(static_cast<unsigned>(M)))
        throw std::invalid_argument("LabeledConstellation: size must be a power of two >= 2");
    if (base_.size() != M)
        throw std::invalid_argument("LabeledConstellation: points must be pairwise distinct");
    if (labels_.size() != M)
        throw std::invalid_argument("LabeledConstellation: one label per point required");
    m_ = log2_exact(static_cast<unsigned>(M));
    std::vector<bool> seen(M, false);
    for (std::uint32_t label : labels_) {
        if (label >= M || seen[label])
            throw std::invalid_argument(
                "LabeledConstellation: labels must be a permutation of all m-bit strings");
        seen[label] = true;
    }
}

int LabeledConstellation::label_bit(std::size_t point_index, int bit_index) const {
    if (bit_index < 1 || bit_index > m_)
        throw std::invalid_argument("label_bit: bit index out of range");
    return static_cast<int>((labels_[point_index] >> (m_ - bit_index)) & 1u);
}

std::string LabeledConstellation::label_string(std::size_t point_index) const {
    std::string s(m_, '0');
    for (int i = 1; i <= m_; ++i)
        if (label_bit(point_index, i)) s[i - 1] = '1';
    return s;
}

Constellation LabeledConstellation::subconstellation(int bit_index, int bit_value) const {
    if (bit_index < 1 || bit_index > m_)
        throw std::invalid_argument("subconstellation: bit index out of range");
    if (bit_value != 0 && bit_value != 1)
        throw std::invalid_argument("subconstellation: bit value must be 0 or 1");
    std::vector<cplx> pts;
    pts.reserve(size() / 2);
    for (std::size_t k = 0; k < size(); ++k)
        if (label_bit(k, bit_index) == bit_value) pts.push_back(base_.points()[k]);
    return Constellation::uniform(std::move(pts));
}

LabeledConstellation LabeledConstellation::with_bit_permutation(const std::vector<int>& perm) const {
    if (perm.size() != static_cast<std::size_t>(m_))
        throw std::invalid_argument("with_bit_permutation: permutation must have m entries");
    std::vector<std::uint32_t> relabeled(size(), 0);
    for (std::size_t k = 0; k < size(); ++k)
        for (int j = 1; j <= m_; ++j)
            relabeled[k] |= static_cast<std::uint32_t>(label_bit(k, perm[j - 1])) << (m_ - j);
    return LabeledConstellation(base_.points(), std::move(relabeled));
}

LabeledConstellation make_pam(unsigned M) {
    if (M < 2 || !is_power_of_two(M))
        throw std::invalid_argument("make_pam: M must be a power of two >= 2");
    const auto levels = pam_levels(M);
    std::vector<cplx> pts(M);
    std::vector<std::uint32_t> labels(M);
    for (unsigned k = 0; k < M; ++k) {
        pts[k] = cplx{levels[k], 0.0};
        labels[k] = gray_code(k);
    }
    return LabeledConstellation(std::move(pts), std::move(labels));
}

LabeledConstellation make_psk(unsigned M, Labeling labeling) {
    if (M < 2 || !is_power_of_two(M))
        throw std::invalid_argument("make_psk: M must be a power of two >= 2");
    std::vector<cplx> pts(M);
    for (unsigned k = 0; k < M; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / M;
        pts[k] = cplx{std::cos(phi), std::sin(phi)};
    }
    std::vector<std::uint32_t> labels(M);
    switch (labeling) {
    case Labeling::gray:
        for (unsigned k = 0; k < M; ++k) labels[k] = gray_code(k);
        break;
    case Labeling::set_partitioning:
        // Natural binary over the angular index: successive bits halve the
        // intra-subset angular spacing.
        for (unsigned k = 0; k < M; ++k) labels[k] = k;
        break;
    case Labeling::anti_gray:
        if (M != 4)
            throw std::invalid_argument("make_psk: anti_gray is defined for M = 4 only");
        labels = {0b00, 0b11, 0b01, 0b10};
        break;
    }
    return LabeledConstellation(std::move(pts), std::move(labels));
}

LabeledConstellation make_qam(unsigned M, Labeling labeling) {
    // Square QAM only: M = 4^k.
    unsigned root = 1;
    while (root * root < M) ++root;
    if (M < 4 || root * root != M || !is_power_of_two(root))
        throw std::invalid_argument("make_qam: M must be an even power of two (square QAM)");
    if (labeling == Labeling::anti_gray)
        throw std::invalid_argument("make_qam: anti_gray is not defined for QAM");
    if (labeling == Labeling::set_partitioning && M != 16)
        throw std::invalid_argument("make_qam: set_partitioning is defined for M = 16");

    const unsigned A = root;           // points per axis
    const int axis_bits = log2_exact(A);
    const auto levels = pam_levels(A); // unit energy per axis before scaling
    const double axis_scale = 1.0 / std::sqrt(2.0);

    std::vector<cplx> pts;
    std::vector<std::uint32_t> labels;
    pts.reserve(M);
    labels.reserve(M);
    for (unsigned u = 0; u < A; ++u) {
        for (unsigned v = 0; v < A; ++v) {
            pts.emplace_back(levels[u] * axis_scale, levels[v] * axis_scale);
            switch (labeling) {
            case Labeling::gray:
                labels.push_back((gray_code(u) << axis_bits) | gray_code(v));
                break;
            case Labeling::set_partitioning: {
                // Partition-tree labeling over the level indices (u, v):
                // b1 checkerboard, b2 rectangular sublattice, b3 diagonal
                // pair, b4 point within the pair.
                const unsigned u2 = u >> 1, v2 = v >> 1;
                const std::uint32_t b1 = (u + v) & 1u;
                const std::uint32_t b2 = u & 1u;
                const std::uint32_t b3 = (u2 + v2 + u + v) & 1u;
                const std::uint32_t b4 = u2;
                labels.push_back((b1 << 3) | (b2 << 2) | (b3 << 1) | b4);
                break;
            }
            case Labeling::anti_gray:
                throw std::invalid_argument("make_qam: anti_gray is not defined for QAM");
            }
        }
    }
    return LabeledConstellation(std::move(pts), std::move(labels));
}

Constellation mixture(const std::vector<std::pair<Constellation, double>>& parts) {
    if (parts.empty()) throw std::invalid_argument("mixture: needs at least one part");
    double wsum = 0.0;
    for (const auto& [part, weight] : parts) {
        (void)part;
        if (!(weight > 0.0)) throw std::invalid_argument("mixture: weights must be positive");
        wsum += weight;
    }
    if (std::abs(wsum - 1.0) > kProbSumTol)
        throw std::invalid_argument("mixture: weights must sum to 1");
    std::vector<cplx> pts;
    std::vector<double> probs;
    for (const auto& [part, weight] : parts) {
        for (std::size_t i = 0; i < part.size(); ++i) {
            pts.push_back(part.points()[i]);
            probs.push_back(weight * part.probs()[i]);
        }
    }
    return Constellation(std::move(pts), std::move(probs));
}

} // namespace bicmwb
