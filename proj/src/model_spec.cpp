#include "rednoise/model_spec.hpp"

#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

#include "overloaded.hpp"

namespace rednoise {

namespace {

using detail::overloaded;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

class Fields {
 public:
  explicit Fields(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  double number(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) fail("model spec: missing '" + key + "'");
    used_.insert(key);
    return parse_number(key, it->second);
  }

  Init init() {
    auto it = kv_.find("init");
    if (it == kv_.end()) return Init::stationary;
    used_.insert("init");
    if (it->second == "stationary") return Init::stationary;
    if (it->second == "zero") return Init::zero;
    fail("model spec: init must be 'stationary' or 'zero'");
  }

  void reject_unused() const {
    for (const auto& [key, value] : kv_)
      if (key != "model" && !used_.contains(key)) fail("model spec: unknown key '" + key + "'");
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view init_name(Init i) { return i == Init::zero ? "zero" : "stationary"; }

}  // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size())
      fail("key-value text: expected key=value, got '" + token + "'");
    auto [it, inserted] = out.emplace(token.substr(0, eq), token.substr(eq + 1));
    if (!inserted) fail("key-value text: duplicate key '" + it->first + "'");
  }
  return out;
}

double parse_number(std::string_view key, std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    fail("'" + std::string(key) + "': not a finite number: '" + std::string(token) + "'");
  return v;
}

NoiseModel parse_model(std::string_view text) {
  auto kv = parse_key_values(text);
  auto it = kv.find("model");
  if (it == kv.end()) fail("model spec: missing 'model'");
  const std::string kind = it->second;
  Fields f(std::move(kv));

  NoiseModel m;
  if (kind == "white") {
    m = model::White{};
  } else if (kind == "red") {
    const double theta = f.number("theta");
    m = model::RedOuDt{{theta, f.init()}};
  } else if (kind == "du") {
    const double theta = f.number("theta");
    m = model::DiffU{{theta, f.init()}};
  } else if (kind == "mixed") {
    m = model::Mixed{{f.number("theta"), f.number("gamma")}};
  } else if (kind == "ar1") {
    const double phi = f.number("phi");
    m = model::Ar1Driven{{phi, f.init()}};
  } else if (kind == "fgn") {
    m = model::Fgn{{f.number("hurst")}};
  } else {
    fail("model spec: unknown model '" + kind + "'");
  }
  f.reject_unused();
  validate(m);
  return m;
}

std::string format_model(const NoiseModel& m) {
  std::string head = "model=" + std::string(model_name(m));
  return head + std::visit(
                    overloaded{
                        [](const model::White&) { return std::string(); },
                        [](const model::RedOuDt& r) {
                          return " theta=" + num(r.ou.theta) + " init=" +
                                 std::string(init_name(r.ou.init));
                        },
                        [](const model::DiffU& d) {
                          return " theta=" + num(d.ou.theta) + " init=" +
                                 std::string(init_name(d.ou.init));
                        },
                        [](const model::Mixed& x) {
                          return " theta=" + num(x.params.theta) + " gamma=" +
                                 num(x.params.gamma);
                        },
                        [](const model::Ar1Driven& a) {
                          return " phi=" + num(a.ar1.phi) + " init=" +
                                 std::string(init_name(a.ar1.init));
                        },
                        [](const model::Fgn& g) { return " hurst=" + num(g.fgn.hurst); },
                    },
                    m);
}

}  // namespace rednoise
