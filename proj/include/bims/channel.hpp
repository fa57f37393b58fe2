#ifndef BIMS_CHANNEL_HPP
#define BIMS_CHANNEL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bims/errors.hpp"

namespace bims {

/// Default absolute tolerance when matching likelihood pairs of a
/// file-sourced matrix (decimal round-off is common in such inputs).
inline constexpr double kSymmetryTol = 1e-9;

enum class ChannelKind { Bsc, Bec, Bsec, Matrix, Mixture, Biawgn };

struct MixtureComponent {
  double weight = 0.0;
  double crossover = 0.0;
};

/// Gallager output pairing certifying symmetry: each entry of `swapped`
/// is a pair of outputs whose likelihood vectors are mirror images;
/// `self_paired` outputs have equal likelihoods under both inputs;
/// `zero_mass` outputs carry no probability and take part in nothing.
struct OutputPairing {
  std::vector<std::pair<int, int>> swapped;
  std::vector<int> self_paired;
  std::vector<int> zero_mass;
};

/// One BSC subchannel of the output-indexed decomposition.
struct Subchannel {
  double mass = 0.0;       // P_A(a)
  double crossover = 0.0;  // in [0, 1/2]
};

/// Probability-weighted BSC list representing a symmetric channel.
/// Entries are sorted by crossover and equal-crossover entries merged.
struct SubchannelDecomposition {
  std::vector<Subchannel> entries;
};

struct InfoDensitySample {
  double value = 0.0;        // bits
  double probability = 0.0;  // joint mass of all (x, y) mapping to this value
};

/// A binary-input memoryless symmetric channel under the equiprobable
/// input convention. Immutable after construction; construction fails
/// with InvalidChannelError (or NotSymmetricError for matrices that
/// admit no output pairing).
class BimsChannel {
 public:
  static BimsChannel bsc(double epsilon);
  static BimsChannel bec(double epsilon);
  static BimsChannel bsec(double eps_s, double eps_e);
  static BimsChannel from_matrix(std::vector<std::vector<double>> rows,
                                 double tol = kSymmetryTol);
  static BimsChannel mixture(std::vector<MixtureComponent> components);
  /// Quantized binary-input AWGN: BPSK signalling at +-1, noise variance
  /// 1/snr, uniform bins spanning 8 sigma beyond both signal means with
  /// edges symmetric about 0 so the y <-> -y pairing is exact.
  static BimsChannel biawgn(double snr_db, int bins = 2001);

  ChannelKind kind() const { return kind_; }
  std::size_t output_count() const { return rows_[0].size(); }
  std::span<const double> row(int input) const { return rows_[input == 0 ? 0 : 1]; }

  /// Parameters of the closed-form variants (meaning depends on kind).
  double param_a() const { return param_a_; }  // bsc/bec epsilon, bsec eps_s, biawgn snr_db
  double param_b() const { return param_b_; }  // bsec eps_e
  int bins() const { return bins_; }
  const std::vector<MixtureComponent>& components() const { return components_; }

 private:
  BimsChannel(ChannelKind kind, std::vector<double> row0, std::vector<double> row1);

  ChannelKind kind_;
  std::vector<double> rows_[2];
  double param_a_ = 0.0;
  double param_b_ = 0.0;
  int bins_ = 0;
  std::vector<MixtureComponent> components_;
};

/// Finds the output pairing required by Gallager symmetry, or throws
/// NotSymmetricError. Outputs with likelihoods (p, q) are matched to
/// outputs with (q, p) within tol; p = q outputs are self-paired.
OutputPairing validate_symmetry(const std::vector<std::vector<double>>& rows,
                                double tol = kSymmetryTol);

SubchannelDecomposition decompose(const BimsChannel& ch);

/// Sum over subchannels of p_a * (1 - h(eps_a)).
double capacity(const BimsChannel& ch);

/// Joint distribution of i(X;Y) = log2 P(y|x)/P(y); samples with equal
/// value are merged, zero-likelihood (x, y) pairs carry no mass.
std::vector<InfoDensitySample> info_density_distribution(const BimsChannel& ch);

/// Explicit-matrix channel equivalent to a decomposition (two outputs
/// per subchannel).
BimsChannel channel_from_decomposition(const SubchannelDecomposition& dec);

/// Parse a channel-spec JSON document, e.g. {"kind":"bsc","epsilon":0.11}.
/// Structural problems throw ChannelSpecError; value problems surface as
/// InvalidChannelError from the factories.
BimsChannel channel_from_spec(const std::string& json_text);

/// Inverse of channel_from_spec for every kind (matrix kinds serialize rows).
std::string channel_spec_json(const BimsChannel& ch);

}  // namespace bims

#endif  // BIMS_CHANNEL_HPP
