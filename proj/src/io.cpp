#include "arrowkit/io.hpp"

#include <fstream>
#include <sstream>

#include "arrowkit/errors.hpp"

namespace arrowkit {

namespace {
constexpr const char* kBitEncoding = "msb-first over index 0..2^n-1";
constexpr const char* kProbOrder = "lex-one-line";
}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::invalid_argument, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), errc::invalid_argument, "cannot write " + path);
  out << content;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(out);
}

Json parse_json(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), errc::invalid_argument, "malformed JSON input");
  return j;
}

std::string pack_bits_hex(const BooleanFunction& f) {
  const std::uint64_t size = f.size();
  const std::uint64_t bytes = (size + 7) / 8;
  std::string hex;
  hex.reserve(2 * bytes);
  static const char digits[] = "0123456789abcdef";
  for (std::uint64_t t = 0; t < bytes; ++t) {
    unsigned byte = 0;
    for (int b = 0; b < 8; ++b) {
      const std::uint64_t index = 8 * t + static_cast<std::uint64_t>(b);
      if (index < size && f.sign(index) > 0) byte |= 0x80u >> b;
    }
    hex.push_back(digits[byte >> 4]);
    hex.push_back(digits[byte & 0xf]);
  }
  return hex;
}

BooleanFunction unpack_bits_hex(int n, std::string_view hex) {
  const std::uint64_t size = table_size_checked(n);
  const std::uint64_t bytes = (size + 7) / 8;
  require(hex.size() == 2 * bytes, errc::invalid_argument,
          "packed_bits must encode exactly " + std::to_string(bytes) + " bytes");
  const auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    fail(errc::invalid_argument, "packed_bits must be hexadecimal");
  };
  std::vector<std::int8_t> signs(size);
  for (std::uint64_t index = 0; index < size; ++index) {
    const std::uint64_t t = index / 8;
    const unsigned byte = (nibble(hex[2 * t]) << 4) | nibble(hex[2 * t + 1]);
    signs[index] = (byte & (0x80u >> (index % 8))) ? 1 : -1;
  }
  return BooleanFunction(n, std::move(signs));
}

Json boolean_to_json(const BooleanFunction& f) {
  return Json{{"n", f.n()}, {"packed_bits", pack_bits_hex(f)}, {"encoding", kBitEncoding}};
}

BooleanFunction boolean_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("packed_bits"),
          errc::invalid_argument, "truth table needs n and packed_bits");
  if (j.contains("encoding"))
    require(j["encoding"] == kBitEncoding, errc::invalid_argument,
            "unsupported truth-table encoding");
  return unpack_bits_hex(j["n"].get<int>(), j["packed_bits"].get<std::string>());
}

Json bounded_to_json(const BoundedFunction& f) {
  Json values = Json::array();
  for (std::uint64_t x = 0; x < f.size(); ++x) values.push_back(f.value(x));
  return Json{{"n", f.n()}, {"values", std::move(values)}};
}

BoundedFunction bounded_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("values") && j["values"].is_array(),
          errc::invalid_argument, "bounded table needs n and a values array");
  const int n = j["n"].get<int>();
  const std::uint64_t size = table_size_checked(n);
  require(j["values"].size() == size, errc::invalid_argument, "values must have 2^n entries");
  Eigen::ArrayXd values(static_cast<Eigen::Index>(size));
  for (std::uint64_t x = 0; x < size; ++x)
    values[static_cast<Eigen::Index>(x)] = j["values"][x].get<double>();
  return BoundedFunction(n, std::move(values));
}

Json constitution_to_json(const Constitution& c) {
  Json pairs = Json::array();
  for (int a = 0; a < c.k(); ++a)
    for (int b = a + 1; b < c.k(); ++b)
      pairs.push_back(Json{{"a", a}, {"b", b}, {"table", boolean_to_json(c.pair_fn(a, b))}});
  return Json{{"k", c.k()}, {"n", c.n()}, {"pairs", std::move(pairs)}};
}

Constitution constitution_from_json(const Json& j) {
  require(j.is_object() && j.contains("k") && j.contains("n") && j.contains("pairs"),
          errc::invalid_argument, "constitution needs k, n and pairs");
  const int k = j["k"].get<int>();
  const int n = j["n"].get<int>();
  require(k >= 2, errc::too_few_alternatives, "constitution needs k >= 2");
  std::vector<std::optional<BooleanFunction>> slots(static_cast<std::size_t>(pair_count(k)));
  for (const Json& entry : j["pairs"]) {
    require(entry.contains("a") && entry.contains("b") && entry.contains("table"),
            errc::invalid_argument, "each pair needs a, b and table");
    const int a = entry["a"].get<int>();
    const int b = entry["b"].get<int>();
    require(0 <= a && a < b && b < k, errc::invalid_argument,
            "pairs must be canonical (0 <= a < b < k)");
    auto& slot = slots[static_cast<std::size_t>(pair_index(k, a, b))];
    require(!slot.has_value(), errc::invalid_argument, "duplicate pair entry");
    BooleanFunction f = boolean_from_json(entry["table"]);
    require(f.n() == n, errc::shape_mismatch, "pair table arity differs from n");
    slot = std::move(f);
  }
  std::vector<BooleanFunction> fns;
  fns.reserve(slots.size());
  for (auto& slot : slots) {
    require(slot.has_value(), errc::invalid_argument, "missing pair entry");
    fns.push_back(std::move(*slot));
  }
  return Constitution(k, n, std::move(fns));
}

Json vote_distribution_to_json(const VoteDistribution& mu) {
  Json probs = Json::array();
  if (mu.exact()) {
    for (const Rational& p : mu.rational_probs())
      probs.push_back(Json{{"num", numerator(p).str()}, {"den", denominator(p).str()}});
  } else {
    for (std::uint64_t r = 0; r < mu.size(); ++r) probs.push_back(mu.prob(r));
  }
  return Json{{"k", mu.k()}, {"probs", std::move(probs)}, {"order", kProbOrder}};
}

namespace {

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  fail(errc::invalid_argument, "expected an integer or integer string");
}

}  // namespace

VoteDistribution vote_distribution_from_json(const Json& j) {
  require(j.is_object() && j.contains("k") && j.contains("probs") && j["probs"].is_array(),
          errc::invalid_argument, "distribution needs k and a probs array");
  if (j.contains("order"))
    require(j["order"] == kProbOrder, errc::invalid_argument,
            "unsupported probability ordering");
  const int k = j["k"].get<int>();
  const Json& probs = j["probs"];
  require(!probs.empty(), errc::invalid_argument, "probs must not be empty");

  const bool rational_mode = probs.front().is_object();
  if (rational_mode) {
    std::vector<Rational> entries;
    entries.reserve(probs.size());
    for (const Json& p : probs) {
      require(p.is_object() && p.contains("num") && p.contains("den"), errc::invalid_argument,
              "rational entries need num and den");
      const BigInt num = bigint_from_json(p["num"]);
      const BigInt den = bigint_from_json(p["den"]);
      require(den > 0, errc::invalid_argument, "denominators must be positive");
      entries.emplace_back(num, den);
    }
    return VoteDistribution::from_rationals(k, std::move(entries));
  }

  Eigen::ArrayXd entries(static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) {
    require(probs[i].is_number(), errc::invalid_argument,
            "probs must be all numbers or all {num, den} objects");
    entries[static_cast<Eigen::Index>(i)] = probs[i].get<double>();
  }
  return VoteDistribution::from_reals(k, std::move(entries));
}

Json ranking_to_json(const Ranking& r) {
  return Json{{"ranks", r.ranks()}, {"order", r.order()}};
}

Ranking ranking_from_json(const Json& j) {
  if (j.is_object() && j.contains("ranks"))
    return Ranking(j["ranks"].get<std::vector<int>>());
  if (j.is_array()) return Ranking(j.get<std::vector<int>>());
  fail(errc::invalid_argument, "ranking needs a ranks array");
}

Json profile_to_json(const Profile& p) {
  Json voters = Json::array();
  for (const Ranking& r : p.voters) voters.push_back(ranking_to_json(r));
  return Json{{"k", p.k()}, {"n", p.n()}, {"voters", std::move(voters)}};
}

Profile profile_from_json(const Json& j) {
  require(j.is_object() && j.contains("voters") && j["voters"].is_array(),
          errc::invalid_argument, "profile needs a voters array");
  std::vector<Ranking> voters;
  voters.reserve(j["voters"].size());
  for (const Json& v : j["voters"]) voters.push_back(ranking_from_json(v));
  return Profile(std::move(voters));
}

Json tournament_to_json(const OutcomeTournament& t) {
  Json pairs = Json::array();
  for (int a = 0; a < t.k; ++a)
    for (int b = a + 1; b < t.k; ++b)
      pairs.push_back(Json{{"a", a}, {"b", b}, {"sign", t.sign(a, b)}});
  Json out{{"k", t.k}, {"pairs", std::move(pairs)}, {"transitive", is_transitive(t)}};
  if (is_transitive(t)) out["order"] = tournament_order(t).order();
  return out;
}

Json rational_to_json(const Rational& r) {
  return Json{{"num", numerator(r).str()}, {"den", denominator(r).str()},
              {"float", to_double(r)}};
}

Json prob_to_json(const ProbValue& p) {
  if (p.is_exact()) return rational_to_json(*p.exact);
  return Json{{"float", p.value}};
}

Json estimate_to_json(const Estimate& e) {
  return Json{{"mean", e.mean},
              {"stderr", e.stderr_value},
              {"half_width_99", e.half_width99},
              {"samples", e.samples}};
}

Json structure_to_json(const FamilyStructure& s) {
  Json blocks = Json::array();
  Json kinds = Json::array();
  for (const FamilyBlock& block : s.blocks) {
    blocks.push_back(block.alternatives);
    if (std::holds_alternative<SingletonKind>(block.kind)) {
      kinds.push_back(Json{{"kind", "singleton"}});
    } else if (const auto* fp = std::get_if<FreePairKind>(&block.kind)) {
      kinds.push_back(Json{{"kind", "free_pair"}, {"table", boolean_to_json(fp->fn)}});
    } else {
      const auto& td = std::get<TopDictatorKind>(block.kind);
      kinds.push_back(Json{{"kind", "top_dictator"}, {"voter", td.voter}, {"sign", td.sign}});
    }
  }
  return Json{{"k", s.k}, {"n", s.n}, {"blocks", std::move(blocks)}, {"kinds", std::move(kinds)}};
}

Constitution load_constitution(const std::string& path) {
  return constitution_from_json(parse_json(read_file(path)));
}

VoteDistribution load_vote_distribution(const std::string& path) {
  return vote_distribution_from_json(parse_json(read_file(path)));
}

}  // namespace arrowkit
