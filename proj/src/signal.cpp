#include "shapegen/signal.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <json.hpp>

#include "shapegen/error.hpp"
#include "shapegen/format.hpp"
#include "shapegen/polynomial.hpp"

namespace shapegen {
namespace {

struct Segment {
  ShapeKind kind;
  std::vector<double> params;
  double duration;
};

double lookup(const std::map<std::string, double>& v, const std::string& p) {
  auto it = v.find(p);
  if (it == v.end()) throw DomainError("no value for parameter '" + p + "'");
  return it->second;
}

std::vector<Segment> segments(const ShapeExpr& e, std::span<const std::string> word,
                              const std::map<std::string, double>& valuation) {
  std::vector<Segment> out;
  for (const auto& atom : word) {
    const AtomicShapeDecl* decl = e.find(atom);
    if (!decl) throw DomainError("unknown atom '" + atom + "'");
    Segment s{decl->kind, {}, lookup(valuation, decl->duration)};
    for (const auto& p : decl->params) s.params.push_back(lookup(valuation, p));
    if (!(s.duration > 0.0) || !std::isfinite(s.duration))
      throw DomainError("atom '" + atom + "' has nonpositive duration " + decl->duration + " = " + shortest(s.duration));
    out.push_back(std::move(s));
  }
  return out;
}

// mpq_get_d truncates; this rounds to nearest, ties to even.
double nearest(const Rational& q) {
  const double d = q.get_d();
  const double away = std::nextafter(d, sgn(q) < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(away)) return d;
  const int c = cmp(abs(q - Rational(d)), abs(Rational(away) - q));
  if (c != 0) return c < 0 ? d : away;
  std::int64_t bits = 0;
  std::memcpy(&bits, &d, sizeof bits);
  return bits % 2 == 0 ? d : away;
}

}  // namespace

double evaluate_shape(ShapeKind kind, std::span<const double> p, double t) {
  switch (kind) {
    case ShapeKind::linear: return p[0] * t + p[1];
    case ShapeKind::exponential: return p[0] + p[1] * std::exp(p[2] * t);
    case ShapeKind::sinusoid: return p[0] * std::sin(p[1] * t + p[2]) + p[3];
  }
  return 0.0;
}

Signal render(const ShapeExpr& e, std::span<const std::string> word, const std::map<std::string, double>& valuation,
              const RenderOptions& opts) {
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw DomainError("dt must be positive");
  const auto segs = segments(e, word, valuation);
  Signal sig;
  Rational start(0);
  double shift = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const Rational end = start + Rational(s.duration);
    const double t0 = nearest(start);
    const double t1 = nearest(end);
    sig.boundaries.push_back(t0);
    if (opts.project_continuity && i > 0) {
      const auto& prev = segs[i - 1];
      shift += evaluate_shape(prev.kind, prev.params, prev.duration) - evaluate_shape(s.kind, s.params, 0.0);
    }
    sig.t.push_back(t0);
    sig.x.push_back(evaluate_shape(s.kind, s.params, 0.0) + shift);
    // Grid points strictly inside (t0, t1).
    for (auto k = static_cast<long long>(std::floor(t0 / opts.dt)) + 1;; ++k) {
      const double t = static_cast<double>(k) * opts.dt;
      if (t <= t0) continue;
      if (t >= t1) break;
      sig.t.push_back(t);
      sig.x.push_back(evaluate_shape(s.kind, s.params, t - t0) + shift);
    }
    start = end;
  }
  sig.total_duration = nearest(start);
  sig.boundaries.push_back(sig.total_duration);
  return sig;
}

std::vector<double> boundary_jumps(const ShapeExpr& e, std::span<const std::string> word,
                                   const std::map<std::string, double>& valuation) {
  const auto segs = segments(e, word, valuation);
  std::vector<double> out;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const auto& a = segs[i - 1];
    const auto& b = segs[i];
    out.push_back(std::abs(evaluate_shape(a.kind, a.params, a.duration) - evaluate_shape(b.kind, b.params, 0.0)));
  }
  return out;
}

std::string to_csv(const Signal& s) {
  std::string out = "t," + s.variable + "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += significant(s.t[i], 9);
    out += ',';
    out += shortest(s.x[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const Signal& s, std::span<const std::string> word,
                    const std::map<std::string, double>& valuation) {
  nlohmann::ordered_json j;
  j["word"] = std::vector<std::string>(word.begin(), word.end());
  j["valuation"] = valuation;
  auto samples = nlohmann::json::array();
  for (std::size_t i = 0; i < s.size(); ++i) samples.push_back({s.t[i], s.x[i]});
  j["samples"] = std::move(samples);
  j["duration"] = s.total_duration;
  return j.dump();
}

}  // namespace shapegen
