#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "gent/bures.hpp"
#include "gent/cli.hpp"
#include "gent/errors.hpp"
#include "gent/relent.hpp"
#include "gent/standard_forms.hpp"

namespace gent::cli {

namespace {

SymmetricState state_for(const SweepSpec& spec, double p) {
  if (spec.parameter == SweepParam::R) return symmetric_sts(p, spec.nbar);
  // Squeezed thermal state at the requested nbar whose kappa_tilde_minus equals p.
  const double r = 0.5 * std::log((spec.nbar + 0.5) / p);
  return symmetric_sts(r, spec.nbar);
}

SweepRow evaluate(const SweepSpec& spec, double p) {
  const SymmetricState s = state_for(spec, p);
  SweepRow row;
  row.param = p;
  row.b = s.b();
  row.c = s.c();
  row.d = s.d();
  row.kappa_plus = s.kappa_plus();
  row.kappa_minus = s.kappa_minus();
  row.kappa_tilde_minus = s.kappa_tilde_minus();
  if (spec.measure != Measure::Relent) row.e_b = bures_entanglement(s).e_b;
  if (spec.measure != Measure::Bures) {
    const RelEntResult r = rel_ent_entanglement(s);
    row.e_s = r.e_s;
    row.x1_star = r.x1_star;
    row.x2_star = r.x2_star;
  }
  return row;
}

std::string field(const std::optional<double>& v) {
  return v ? fmt::format("{:.17g}", *v) : std::string();
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void validate(const SweepSpec& spec) {
  if (!(spec.start < spec.stop)) throw Error(Errc::ParseError, "--start must be below --stop");
  if (spec.steps < 2) throw Error(Errc::ParseError, "--steps must be at least 2");
  if (!(spec.nbar >= 0.0)) throw Error(Errc::ParseError, "--nbar must be nonnegative");
  if (spec.parameter == SweepParam::KappaTilde) {
    if (!(spec.start > 0.0) || spec.stop > 0.5) {
      throw Error(Errc::ParseError, "kappa_tilde range must lie within (0, 1/2]");
    }
  } else if (spec.start < 0.0) {
    throw Error(Errc::ParseError, "--start must be nonnegative for r sweeps");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.steps);
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double p = spec.start + (spec.stop - spec.start) * static_cast<double>(i) /
                                        static_cast<double>(n - 1);
      try {
        rows[i] = evaluate(spec, p);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const SweepRow& r : rows) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{},{},{}\n",
                       r.param, r.b, r.c, r.d, r.kappa_plus, r.kappa_minus, r.kappa_tilde_minus,
                       field(r.e_b), field(r.e_s), field(r.x1_star), field(r.x2_star));
  }
  return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows, const SweepSpec& spec) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["parameter"] = spec.parameter == SweepParam::R ? "r" : "kappa_tilde";
  doc["nbar"] = spec.nbar;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"param", r.param},
                   {"b", r.b},
                   {"c", r.c},
                   {"d", r.d},
                   {"kappa_plus", r.kappa_plus},
                   {"kappa_minus", r.kappa_minus},
                   {"kappa_tilde_minus", r.kappa_tilde_minus},
                   {"e_b", opt_json(r.e_b)},
                   {"e_s", opt_json(r.e_s)},
                   {"x1_star", opt_json(r.x1_star)},
                   {"x2_star", opt_json(r.x2_star)}});
  }
  doc["rows"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace gent::cli
