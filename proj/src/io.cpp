#include "carpet/io.hpp"

#include <fmt/format.h>

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "carpet/error.hpp"

namespace carpet {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Float literals are kept as text so decimals convert exactly. They are stored
// as strings behind a marker byte that no JSON string of ours starts with.
constexpr char kDecimalMark = '\x01';

class LiteralSax {
 public:
  json root;

  bool null() { return put(nullptr); }
  bool boolean(bool v) { return put(v); }
  bool number_integer(json::number_integer_t v) { return put(v); }
  bool number_unsigned(json::number_unsigned_t v) { return put(v); }
  bool number_float(json::number_float_t, const json::string_t& s) { return put(kDecimalMark + s); }
  bool string(json::string_t& s) { return put(s); }
  bool binary(json::binary_t&) { return false; }
  bool start_object(std::size_t) { return open(json::object()); }
  bool key(json::string_t& k) {
    key_ = k;
    return true;
  }
  bool end_object() { return close(); }
  bool start_array(std::size_t) { return open(json::array()); }
  bool end_array() { return close(); }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) {
    throw Error(Errc::InputParse, fmt::format("malformed JSON at byte {}: {}", pos, e.what()));
  }

 private:
  std::vector<json*> stack_;
  std::string key_;

  json* slot(json v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(v));
      return &top.back();
    }
    top[key_] = std::move(v);
    return &top[key_];
  }
  bool put(json v) {
    slot(std::move(v));
    return true;
  }
  bool open(json v) {
    stack_.push_back(slot(std::move(v)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }
};

Rational number_field(const json& obj, const char* name, std::size_t index) {
  const auto where = [&] { return fmt::format("maps[{}].{}", index, name); };
  if (!obj.contains(name)) throw Error(Errc::InputParse, where() + " is missing");
  const json& v = obj.at(name);
  try {
    if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
    if (v.is_number_unsigned()) return Rational(std::to_string(v.get<unsigned long long>()));
    if (v.is_string()) {
      const auto& s = v.get_ref<const std::string&>();
      if (!s.empty() && s[0] == kDecimalMark) return rational_from_decimal(std::string_view(s).substr(1));
    }
    if (v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den") && v.at("num").is_number_integer() &&
        v.at("den").is_number_integer()) {
      const auto den = v.at("den").get<long long>();
      if (den == 0) throw Error(Errc::InputParse, where() + " has a zero denominator");
      Rational q = Rational(std::to_string(v.at("num").get<long long>())) / Rational(std::to_string(den));
      return q;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::InputParse) throw;
    throw Error(Errc::InputParse, where() + ": " + e.what());
  }
  throw Error(Errc::InputParse, where() + " must be a number or {\"num\":int,\"den\":int}");
}

void push_interval_row(std::string& out, double lo, double hi) {
  out += format_number(lo);
  out += ',';
  out += format_number(hi);
  out += '\n';
}

ordered_json intervals_json(const IntervalUnion1D& u) {
  ordered_json a = ordered_json::array();
  for (const auto& iv : u.intervals()) a.push_back({iv.lo, iv.hi});
  return a;
}

}  // namespace

std::vector<ExactAffineMap> parse_maps_json(std::string_view text) {
  LiteralSax sax;
  json::sax_parse(text.begin(), text.end(), &sax);
  const json& doc = sax.root;
  if (!doc.is_object() || !doc.contains("maps") || !doc.at("maps").is_array()) {
    throw Error(Errc::InputParse, "expected an object with a \"maps\" array");
  }
  std::vector<ExactAffineMap> maps;
  std::size_t i = 0;
  for (const auto& m : doc.at("maps")) {
    if (!m.is_object()) throw Error(Errc::InputParse, fmt::format("maps[{}] is not an object", i));
    maps.push_back({number_field(m, "a1", i), number_field(m, "a2", i), number_field(m, "b1", i),
                    number_field(m, "b2", i)});
    ++i;
  }
  return maps;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InputParse, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<ExactAffineMap> read_maps_file(const std::filesystem::path& path) {
  return parse_maps_json(read_text_file(path));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(Errc::InvalidArgument, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::string constants_csv(const CarpetSpec& spec) {
  std::string out = "name,value,lower,upper,certified_depth\n";
  auto row = [&](std::string_view name, double v, double lo, double hi, int depth) {
    out += fmt::format("{},{},{},{},{}\n", name, format_number(v), format_number(lo), format_number(hi), depth);
  };
  row("maps", static_cast<double>(spec.size()), spec.size(), spec.size(), 0);
  row("alpha_bar", spec.alpha_bar(), spec.alpha_bar(), spec.alpha_bar(), 0);
  row("alpha_under", spec.alpha_under(), spec.alpha_under(), spec.alpha_under(), 0);
  row("beta", spec.beta(), spec.beta(), spec.beta(), 0);
  row("alpha2_max", spec.alpha2_max(), spec.alpha2_max(), spec.alpha2_max(), 0);
  const auto& b = spec.bounding();
  const Rect& q = b.rect;
  row("q_xmin", q.xmin, q.xmin - b.error, q.xmin + b.error, 0);
  row("q_xmax", q.xmax, q.xmax - b.error, q.xmax + b.error, 0);
  row("q_ymin", q.ymin, q.ymin - b.error, q.ymin + b.error, 0);
  row("q_ymax", q.ymax, q.ymax - b.error, q.ymax + b.error, 0);
  const auto& d = spec.delta();
  row("delta", d.lo, d.lo, d.hi, d.depth);
  const auto& s = spec.ssc();
  row("ssc", s.certified ? 1.0 : 0.0, s.delta_lo, d.hi, s.depth);
  return out;
}

std::string witnesses_csv(const std::vector<NamedCheck>& checks) {
  std::string out = "condition,x_lo,x_hi\n";
  for (const auto& c : checks) {
    for (const auto& w : c.result.witnesses) {
      out += fmt::format("{},{},{}\n", c.condition, to_string(w.lo), to_string(w.hi));
    }
  }
  return out;
}

std::string points_csv(const std::vector<Point2>& pts) {
  std::string out = "x,y\n";
  for (const auto& p : pts) push_interval_row(out, p.x, p.y);
  return out;
}

std::string intervals_csv(const IntervalUnion1D& u) {
  std::string out = "lo,hi\n";
  for (const auto& iv : u.intervals()) push_interval_row(out, iv.lo, iv.hi);
  return out;
}

std::string intervals_csv(const ExactIntervalUnion& u) {
  std::string out = "lo,hi\n";
  for (const auto& iv : u.intervals()) out += fmt::format("{},{}\n", to_string(iv.lo), to_string(iv.hi));
  return out;
}

std::string scale_report_csv(const std::vector<ScaleReport>& rows) {
  std::string out = "t,prefix,n_lower,n_exact,n_upper,ratio,lo_bound,hi_bound,pass\n";
  for (const auto& r : rows) {
    const std::string n_exact = r.n_exact.certified() ? std::to_string(r.n_exact.lo)
                                                      : fmt::format("{}-{}", r.n_exact.lo, r.n_exact.hi);
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_number(r.t), r.word, r.n_lower, n_exact, r.n_upper,
                       format_number(r.ratio), format_number(r.lo_bound), format_number(r.hi_bound),
                       r.pass() ? 1 : 0);
  }
  return out;
}

std::string regularity_csv(const std::vector<RegularityReport>& rows) {
  std::string out = "x,porosity_est,porosity_bound,perfectness_est,perfectness_bound,pass\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", format_number(r.x), format_number(r.porosity_const),
                       format_number(r.bounds.porosity), format_number(r.perfectness_const),
                       format_number(r.bounds.perfectness), r.pass() ? 1 : 0);
  }
  return out;
}

std::string tangent_json(const EpsPatternReport& r) {
  ordered_json j;
  j["center"] = {r.center.x, r.center.y};
  j["t"] = r.t;
  j["K"] = r.K;
  j["w"] = r.w;
  j["residual"] = r.residual;
  j["bound"] = r.bound;
  j["pass"] = r.pass;
  j["c_left"] = intervals_json(r.c_left);
  j["c_right"] = intervals_json(r.c_right);
  j["n"] = r.n;
  j["u"] = r.u;
  j["v"] = r.v;
  j["slack"] = r.slack;
  return j.dump(2) + "\n";
}

std::string estimates_csv(const std::vector<DimensionEstimate>& rows) {
  std::string out = "method,level_lo,level_hi,value,adjusted,samples\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.method, r.level_lo, r.level_hi, format_number(r.value),
                       format_number(r.adjusted), r.samples);
  }
  return out;
}

std::string microset_json(const MicrosetResult& m) {
  ordered_json j;
  j["window_depth"] = m.window_depth;
  j["window_address"] = {m.window_x, m.window_y};
  j["lambda"] = m.lambda;
  j["z"] = {m.z.x, m.z.y};
  ordered_json counts = ordered_json::array();
  for (const auto& [n, c] : m.counts) counts.push_back({n, c});
  j["counts"] = counts;
  ordered_json best = ordered_json::array();
  for (const auto& c : m.best_counts) best.push_back({c.level, c.count, c.adjusted});
  j["best_counts"] = best;
  j["windows"] = m.windows;
  return j.dump(2) + "\n";
}

}  // namespace carpet
