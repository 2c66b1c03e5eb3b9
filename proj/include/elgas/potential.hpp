#pragma once

// Fourier-mode interaction families.  Every family satisfies
// 0 <= V_k = V_{-k}, V_0 = 0; table potentials are checked by validate().

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "elgas/lattice.hpp"
#include "elgas/vec3.hpp"

namespace elgas {

struct CoulombKind {
  double g;
};
struct YukawaKind {
  double g;
  double mu;
};
struct TableKind {
  std::map<IVec3, double> values;
};
struct ZeroKind {};

class Potential {
 public:
  using Kind = std::variant<CoulombKind, YukawaKind, TableKind, ZeroKind>;

  static Potential coulomb(double g) { return Potential(CoulombKind{check_coupling(g)}); }
  static Potential yukawa(double g, double mu) { return Potential(YukawaKind{check_coupling(g), mu}); }
  static Potential zero() { return Potential(ZeroKind{}); }
  static Potential table(std::map<IVec3, double> values) {
    for (const auto& [k, v] : values)
      if (!std::isfinite(v)) throw std::invalid_argument("table potential: non-finite value at " + to_string(k));
    return Potential(TableKind{std::move(values)});
  }

  /// Reads "kx ky kz value" lines; '#' starts a comment.
  static Potential load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("table potential: cannot open '" + path + "'");
    return table(parse_table(in, path));
  }

  /// "coulomb:g=1", "yukawa:g=1,mu=0.5", "table:PATH", "zero".
  static Potential parse(std::string_view spec);

  /// V_k; zero at k = 0 for every kind.
  double operator()(const IVec3& k) const {
    if (k.is_zero()) return 0.0;
    return std::visit(
        [&](const auto& kind) -> double {
          using T = std::decay_t<decltype(kind)>;
          const auto n2 = static_cast<double>(k.norm2());
          if constexpr (std::is_same_v<T, CoulombKind>) {
            return kind.g / n2;
          } else if constexpr (std::is_same_v<T, YukawaKind>) {
            return kind.g / (n2 + kind.mu * kind.mu);
          } else if constexpr (std::is_same_v<T, TableKind>) {
            auto it = kind.values.find(k);
            return it == kind.values.end() ? 0.0 : it->second;
          } else {
            return 0.0;
          }
        },
        kind_);
  }

  const Kind& kind() const { return kind_; }
  bool is_zero() const { return std::holds_alternative<ZeroKind>(kind_); }

  /// Radial families are invariant under the cubic group, so k-sums may be folded.
  bool is_cubic_invariant() const { return !std::holds_alternative<TableKind>(kind_); }

  std::string describe() const {
    return std::visit(
        [](const auto& kind) -> std::string {
          using T = std::decay_t<decltype(kind)>;
          std::ostringstream os;
          os.precision(17);
          if constexpr (std::is_same_v<T, CoulombKind>) {
            os << "coulomb:g=" << kind.g;
          } else if constexpr (std::is_same_v<T, YukawaKind>) {
            os << "yukawa:g=" << kind.g << ",mu=" << kind.mu;
          } else if constexpr (std::is_same_v<T, TableKind>) {
            os << "table(" << kind.values.size() << " entries)";
          } else {
            os << "zero";
          }
          return os.str();
        },
        kind_);
  }

  static std::map<IVec3, double> parse_table(std::istream& in, const std::string& origin) {
    std::map<IVec3, double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::int64_t x, y, z;
      double v;
      if (!(fields >> x)) continue;  // blank or comment-only
      if (!(fields >> y >> z >> v))
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected 'kx ky kz value'");
      std::string rest;
      if (fields >> rest)
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": trailing field '" + rest + "'");
      values[IVec3{x, y, z}] = v;
    }
    return values;
  }

 private:
  explicit Potential(Kind kind) : kind_(std::move(kind)) {}

  static double check_coupling(double g) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("potential: coupling g must be >= 0");
    return g;
  }

  Kind kind_;
};

namespace detail {

inline std::map<std::string, double> parse_params(std::string_view text, std::string_view spec) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw std::invalid_argument("potential '" + std::string(spec) + "': expected key=value, got '" +
                                  std::string(item) + "'");
    const std::string value(item.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty())
      throw std::invalid_argument("potential '" + std::string(spec) + "': bad number '" + value + "'");
    out[std::string(item.substr(0, eq))] = v;
    pos = end + 1;
  }
  return out;
}

}  // namespace detail

inline Potential Potential::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  auto take = [&](std::map<std::string, double>& params, const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument("potential '" + std::string(spec) + "': missing parameter '" + key + "'");
    const double v = it->second;
    params.erase(it);
    return v;
  };
  auto finish = [&](const std::map<std::string, double>& params) {
    if (!params.empty())
      throw std::invalid_argument("potential '" + std::string(spec) + "': unknown parameter '" +
                                  params.begin()->first + "'");
  };

  if (name == "zero") {
    if (!rest.empty()) throw std::invalid_argument("potential 'zero' takes no parameters");
    return zero();
  }
  if (name == "coulomb") {
    auto params = detail::parse_params(rest, spec);
    const double g = take(params, "g");
    finish(params);
    return coulomb(g);
  }
  if (name == "yukawa") {
    auto params = detail::parse_params(rest, spec);
    const double g = take(params, "g");
    const double mu = take(params, "mu");
    finish(params);
    return yukawa(g, mu);
  }
  if (name == "table") {
    if (rest.empty()) throw std::invalid_argument("potential 'table:PATH' needs a path");
    return load_table(std::string(rest));
  }
  throw std::invalid_argument("unknown potential '" + std::string(spec) + "'");
}

struct PotentialReport {
  bool symmetric = true;
  bool nonnegative = true;
  double partial_l2 = 0.0;
  /// k with V_k < V_{-k} (the deficient side of an asymmetric pair).
  std::vector<IVec3> asymmetric_at;
  std::vector<IVec3> negative_at;

  bool ok() const { return symmetric && nonnegative; }
};

/// Exhaustive hypothesis check on 0 < |k| <= cutoff_radius.
inline PotentialReport validate(const Potential& pot, double cutoff_radius) {
  if (!(cutoff_radius >= 1.0)) throw std::invalid_argument("validate: cutoff radius must be >= 1");
  PotentialReport report;
  double sum2 = 0.0;
  for (const auto& k : lattice_shell(-1.0, cutoff_radius)) {
    const double v = pot(k);
    const double mirror = pot(-k);
    if (v < mirror) {
      report.symmetric = false;
      report.asymmetric_at.push_back(k);
    }
    if (v < 0.0) {
      report.nonnegative = false;
      report.negative_at.push_back(k);
    }
    sum2 += v * v;
  }
  report.partial_l2 = std::sqrt(sum2);
  return report;
}

}  // namespace elgas
