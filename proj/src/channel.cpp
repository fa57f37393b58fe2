#include "bims/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bims/extremes.hpp"
#include "json.hpp"

namespace bims {

namespace {

constexpr double kRowSumTol = 1e-12;

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << p << " is not a probability";
    throw InvalidChannelError(msg.str());
  }
}

void require_valid_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.size() != 2 || rows[0].size() != rows[1].size() || rows[0].empty())
    throw InvalidChannelError("transition matrix must be 2 x M with M >= 1");
  for (const auto& row : rows) {
    double sum = 0.0;
    for (double p : row) {
      if (!(p >= 0.0)) throw InvalidChannelError("negative transition probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
      throw InvalidChannelError("transition matrix row does not sum to 1");
  }
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

BimsChannel::BimsChannel(ChannelKind kind, std::vector<double> row0,
                         std::vector<double> row1)
    : kind_(kind) {
  rows_[0] = std::move(row0);
  rows_[1] = std::move(row1);
}

BimsChannel BimsChannel::bsc(double epsilon) {
  require_probability(epsilon, "bsc epsilon");
  BimsChannel ch(ChannelKind::Bsc, {1.0 - epsilon, epsilon}, {epsilon, 1.0 - epsilon});
  ch.param_a_ = epsilon;
  return ch;
}

BimsChannel BimsChannel::bec(double epsilon) {
  require_probability(epsilon, "bec epsilon");
  BimsChannel ch(ChannelKind::Bec, {1.0 - epsilon, 0.0, epsilon},
                 {0.0, 1.0 - epsilon, epsilon});
  ch.param_a_ = epsilon;
  return ch;
}

BimsChannel BimsChannel::bsec(double eps_s, double eps_e) {
  require_probability(eps_s, "bsec eps_s");
  require_probability(eps_e, "bsec eps_e");
  if (2.0 * eps_s + eps_e > 1.0 + kRowSumTol)
    throw InvalidChannelError("bsec requires 2 eps_s + eps_e <= 1");
  const double good = 1.0 - eps_e - eps_s;
  BimsChannel ch(ChannelKind::Bsec, {good, eps_s, eps_e}, {eps_s, good, eps_e});
  ch.param_a_ = eps_s;
  ch.param_b_ = eps_e;
  return ch;
}

BimsChannel BimsChannel::from_matrix(std::vector<std::vector<double>> rows, double tol) {
  require_valid_rows(rows);
  validate_symmetry(rows, tol);  // throws NotSymmetricError when no pairing exists
  BimsChannel ch(ChannelKind::Matrix, std::move(rows[0]), std::move(rows[1]));
  return ch;
}

BimsChannel BimsChannel::mixture(std::vector<MixtureComponent> components) {
  if (components.empty()) throw InvalidChannelError("mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components) {
    require_probability(c.weight, "mixture weight");
    if (!(c.crossover >= 0.0 && c.crossover <= 0.5))
      throw InvalidChannelError("mixture crossover must lie in [0, 1/2]");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kRowSumTol)
    throw InvalidChannelError("mixture weights do not sum to 1");

  std::vector<double> row0, row1;
  row0.reserve(2 * components.size());
  row1.reserve(2 * components.size());
  for (const auto& c : components) {
    row0.push_back(c.weight * (1.0 - c.crossover));
    row0.push_back(c.weight * c.crossover);
    row1.push_back(c.weight * c.crossover);
    row1.push_back(c.weight * (1.0 - c.crossover));
  }
  BimsChannel ch(ChannelKind::Mixture, std::move(row0), std::move(row1));
  ch.components_ = std::move(components);
  return ch;
}

BimsChannel BimsChannel::biawgn(double snr_db, int bins) {
  if (bins < 2) throw InvalidChannelError("biawgn needs at least 2 bins");
  if (!std::isfinite(snr_db)) throw InvalidChannelError("biawgn snr_db must be finite");
  const double snr = std::pow(10.0, snr_db / 10.0);
  const double sigma = 1.0 / std::sqrt(snr);
  const double span = 1.0 + 8.0 * sigma;  // covers both means +- 8 sigma
  const double width = 2.0 * span / bins;

  // Row for x = +1; the x = -1 row is its exact mirror so the pairing
  // bin j <-> bin (bins-1-j) holds bit-for-bit. Edge bins absorb tails.
  std::vector<double> row0(bins);
  for (int j = 0; j < bins; ++j) {
    const double lo = -span + j * width;
    const double hi = lo + width;
    const double c_lo = (j == 0) ? 0.0 : std_normal_cdf((lo - 1.0) / sigma);
    const double c_hi = (j == bins - 1) ? 1.0 : std_normal_cdf((hi - 1.0) / sigma);
    row0[j] = std::max(0.0, c_hi - c_lo);
  }
  std::vector<double> row1(bins);
  for (int j = 0; j < bins; ++j) row1[j] = row0[bins - 1 - j];

  BimsChannel ch(ChannelKind::Biawgn, std::move(row0), std::move(row1));
  ch.param_a_ = snr_db;
  ch.bins_ = bins;
  return ch;
}

OutputPairing validate_symmetry(const std::vector<std::vector<double>>& rows,
                                double tol) {
  require_valid_rows(rows);
  if (!(tol >= 0.0)) throw InvalidChannelError("symmetry tolerance must be >= 0");
  const int m = static_cast<int>(rows[0].size());

  OutputPairing pairing;
  std::vector<bool> used(m, false);
  for (int y = 0; y < m; ++y) {
    const double p = rows[0][y], q = rows[1][y];
    if (p == 0.0 && q == 0.0) {
      pairing.zero_mass.push_back(y);
      used[y] = true;
    }
  }

  // Pass 1, exact matches only. Constructed matrices (and the quantized
  // BIAWGN in particular) mirror likelihoods bit-for-bit, and tolerance
  // matching must not pair near-duplicate tail outputs across bins.
  for (int y = 0; y < m; ++y) {
    if (used[y]) continue;
    const double p = rows[0][y], q = rows[1][y];
    if (p == q) {
      pairing.self_paired.push_back(y);
      used[y] = true;
      continue;
    }
    for (int y2 = y + 1; y2 < m; ++y2) {
      if (used[y2]) continue;
      if (rows[0][y2] == q && rows[1][y2] == p) {
        used[y] = used[y2] = true;
        pairing.swapped.emplace_back(y, y2);
        break;
      }
    }
  }

  // Pass 2, tolerance matching for decimal round-off; each remaining
  // output takes its best-fitting mirror, not the first within tol.
  for (int y = 0; y < m; ++y) {
    if (used[y]) continue;
    const double p = rows[0][y], q = rows[1][y];
    if (std::abs(p - q) <= tol) {
      pairing.self_paired.push_back(y);
      used[y] = true;
      continue;
    }
    int partner = -1;
    double best = tol;
    for (int y2 = y + 1; y2 < m; ++y2) {
      if (used[y2]) continue;
      const double dist = std::max(std::abs(rows[0][y2] - q), std::abs(rows[1][y2] - p));
      if (dist <= best) {
        best = dist;
        partner = y2;
      }
    }
    if (partner < 0) {
      std::ostringstream msg;
      msg << "output " << y << " with likelihoods (" << p << ", " << q
          << ") has no mirror output";
      throw NotSymmetricError(msg.str());
    }
    used[partner] = true;
    used[y] = true;
    pairing.swapped.emplace_back(y, partner);
  }
  return pairing;
}

SubchannelDecomposition decompose(const BimsChannel& ch) {
  std::vector<std::vector<double>> rows{
      {ch.row(0).begin(), ch.row(0).end()},
      {ch.row(1).begin(), ch.row(1).end()},
  };
  const OutputPairing pairing = validate_symmetry(rows);

  std::vector<Subchannel> raw;
  for (const auto& pair : pairing.swapped) {
    const double p = rows[0][pair.first], q = rows[1][pair.first];
    raw.push_back({p + q, std::min(p, q) / (p + q)});
  }
  for (int y : pairing.self_paired) {
    const double mass = 0.5 * (rows[0][y] + rows[1][y]);
    if (mass > 0.0) raw.push_back({mass, 0.5});
  }

  std::sort(raw.begin(), raw.end(),
            [](const Subchannel& a, const Subchannel& b) { return a.crossover < b.crossover; });

  // Canonical form: merge entries whose crossovers coincide (1e-12).
  SubchannelDecomposition dec;
  for (const Subchannel& sub : raw) {
    if (!dec.entries.empty() &&
        std::abs(dec.entries.back().crossover - sub.crossover) <= 1e-12) {
      Subchannel& prev = dec.entries.back();
      const double mass = prev.mass + sub.mass;
      prev.crossover = (prev.crossover * prev.mass + sub.crossover * sub.mass) / mass;
      prev.mass = mass;
    } else {
      dec.entries.push_back(sub);
    }
  }
  return dec;
}

double capacity(const BimsChannel& ch) {
  double c = 0.0;
  for (const Subchannel& sub : decompose(ch).entries)
    c += sub.mass * (1.0 - binary_entropy(sub.crossover));
  return c;
}

std::vector<InfoDensitySample> info_density_distribution(const BimsChannel& ch) {
  std::map<double, double> by_value;
  const auto r0 = ch.row(0);
  const auto r1 = ch.row(1);
  for (std::size_t y = 0; y < ch.output_count(); ++y) {
    const double py = 0.5 * (r0[y] + r1[y]);
    if (py <= 0.0) continue;
    for (double pyx : {r0[y], r1[y]}) {
      if (pyx <= 0.0) continue;
      by_value[std::log2(pyx / py)] += 0.5 * pyx;
    }
  }
  std::vector<InfoDensitySample> samples;
  samples.reserve(by_value.size());
  for (const auto& [value, probability] : by_value) samples.push_back({value, probability});
  return samples;
}

BimsChannel channel_from_decomposition(const SubchannelDecomposition& dec) {
  std::vector<double> row0, row1;
  for (const Subchannel& sub : dec.entries) {
    row0.push_back(sub.mass * (1.0 - sub.crossover));
    row0.push_back(sub.mass * sub.crossover);
    row1.push_back(sub.mass * sub.crossover);
    row1.push_back(sub.mass * (1.0 - sub.crossover));
  }
  return BimsChannel::from_matrix({std::move(row0), std::move(row1)});
}

BimsChannel channel_from_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ChannelSpecError(std::string("invalid JSON: ") + e.what());
  }
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "bsc") return BimsChannel::bsc(doc.at("epsilon").get<double>());
    if (kind == "bec") return BimsChannel::bec(doc.at("epsilon").get<double>());
    if (kind == "bsec")
      return BimsChannel::bsec(doc.at("eps_s").get<double>(), doc.at("eps_e").get<double>());
    if (kind == "matrix")
      return BimsChannel::from_matrix(doc.at("rows").get<std::vector<std::vector<double>>>());
    if (kind == "mixture") {
      std::vector<MixtureComponent> comps;
      for (const auto& item : doc.at("components"))
        comps.push_back({item.at("p").get<double>(), item.at("epsilon").get<double>()});
      return BimsChannel::mixture(std::move(comps));
    }
    if (kind == "biawgn") {
      const int bins = doc.contains("bins") ? doc.at("bins").get<int>() : 2001;
      return BimsChannel::biawgn(doc.at("snr_db").get<double>(), bins);
    }
    throw ChannelSpecError("unknown channel kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ChannelSpecError(std::string("bad channel spec: ") + e.what());
  }
}

std::string channel_spec_json(const BimsChannel& ch) {
  nlohmann::json doc;
  switch (ch.kind()) {
    case ChannelKind::Bsc:
      doc = {{"kind", "bsc"}, {"epsilon", ch.param_a()}};
      break;
    case ChannelKind::Bec:
      doc = {{"kind", "bec"}, {"epsilon", ch.param_a()}};
      break;
    case ChannelKind::Bsec:
      doc = {{"kind", "bsec"}, {"eps_s", ch.param_a()}, {"eps_e", ch.param_b()}};
      break;
    case ChannelKind::Mixture: {
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& c : ch.components())
        comps.push_back({{"p", c.weight}, {"epsilon", c.crossover}});
      doc = {{"kind", "mixture"}, {"components", std::move(comps)}};
      break;
    }
    case ChannelKind::Biawgn:
      doc = {{"kind", "biawgn"}, {"snr_db", ch.param_a()}, {"bins", ch.bins()}};
      break;
    case ChannelKind::Matrix: {
      nlohmann::json rows = nlohmann::json::array();
      rows.push_back(std::vector<double>(ch.row(0).begin(), ch.row(0).end()));
      rows.push_back(std::vector<double>(ch.row(1).begin(), ch.row(1).end()));
      doc = {{"kind", "matrix"}, {"rows", std::move(rows)}};
      break;
    }
  }
  return doc.dump();
}

}  // namespace bims
