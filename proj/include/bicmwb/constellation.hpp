#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bicmwb {

using cplx = std::complex<double>;

/// First moment, energy, and second-order pseudo-moment E[X^2] of a signal set.
struct Moments {
    cplx mu1{0.0, 0.0};
    double mu2 = 0.0;
    cplx mu2_pseudo{0.0, 0.0};
};

/// Covariance of the (re, im) coordinates under the point probabilities.
struct Covariance2x2 {
    double var_re = 0.0;
    double var_im = 0.0;
    double cov_re_im = 0.0;

    double trace() const { return var_re + var_im; }
};

/// A finite set of complex signal points with a probability mass function.
///
/// Invariants enforced at construction: all coordinates finite, probabilities
/// in [0,1] summing to 1 within 1e-12, and no duplicate points (coincident
/// points are merged with summed probability). Instances are immutable and
/// safe to share across threads.
class Constellation {
  public:
    Constellation(std::vector<cplx> points, std::vector<double> probs);

    /// Equiprobable constellation over the given points.
    static Constellation uniform(std::vector<cplx> points);

    std::size_t size() const { return points_.size(); }
    const std::vector<cplx>& points() const { return points_; }
    const std::vector<double>& probs() const { return probs_; }

    Moments moments() const;
    Covariance2x2 covariance() const;

    /// All points multiplied by a fixed complex factor; probabilities kept.
    Constellation scaled(cplx factor) const;

    bool is_zero_mean_unit_energy(double tol = 1e-9) const;

  private:
    std::vector<cplx> points_;
    std::vector<double> probs_;
};

enum class Labeling { gray, set_partitioning, anti_gray };

/// An equiprobable constellation of size M = 2^m with a bijective m-bit
/// label per point. Bit positions are 1-based from the most significant
/// (leftmost) label character.
class LabeledConstellation {
  public:
    /// labels[k] is the m-bit label of points[k], packed MSB-first.
    LabeledConstellation(std::vector<cplx> points, std::vector<std::uint32_t> labels);

    int bits() const { return m_; }
    std::size_t size() const { return base_.size(); }
    const Constellation& base() const { return base_; }
    const std::vector<std::uint32_t>& labels() const { return labels_; }

    /// Single bit of a point's label, position 1..m from the left.
    int label_bit(std::size_t point_index, int bit_index) const;
    std::string label_string(std::size_t point_index) const;

    /// Half-constellation whose labels carry `bit_value` at `bit_index`;
    /// each point keeps probability 2/M (no mean or energy renormalization).
    Constellation subconstellation(int bit_index, int bit_value) const;

    /// Same point set with label bit positions rearranged: new bit j is old
    /// bit perm[j-1]. perm must be a permutation of 1..m.
    LabeledConstellation with_bit_permutation(const std::vector<int>& perm) const;

  private:
    Constellation base_;
    std::vector<std::uint32_t> labels_;
    int m_;
};

/// M-PAM on the real axis, unit energy, binary-reflected Gray labels over
/// the left-to-right point order. M must be a power of two >= 2.
LabeledConstellation make_pam(unsigned M);

/// M-PSK on the unit circle, points exp(j 2 pi k / M) counter-clockwise from
/// angle 0. Gray is binary-reflected over the angular order; set_partitioning
/// is the natural binary labeling of the angular index; anti_gray is defined
/// for M = 4 only.
LabeledConstellation make_psk(unsigned M, Labeling labeling);

/// Square M-QAM (M = 4^k) as the Cartesian product of two sqrt(M)-PAM axes,
/// each carrying half the energy. Gray labels concatenate the per-axis
/// binary-reflected codes, real-axis bits first. set_partitioning is
/// supported for M = 16.
LabeledConstellation make_qam(unsigned M, Labeling labeling);

/// Weighted union of constellations; weights must be positive and sum to 1.
/// Coincident points are merged. Used for APSK-style ring constellations.
Constellation mixture(const std::vector<std::pair<Constellation, double>>& parts);

inline Moments moments(const Constellation& c) { return c.moments(); }
inline Covariance2x2 covariance(const Constellation& c) { return c.covariance(); }
inline Constellation subconstellation(const LabeledConstellation& lc, int bit_index, int bit_value) {
    return lc.subconstellation(bit_index, bit_value);
}

} // namespace bicmwb
