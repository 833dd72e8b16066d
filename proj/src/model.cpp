#include "swctl/model.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "swctl/field.hpp"

namespace swctl {

using json = nlohmann::json;

namespace {

std::string position(int row, int col) {
  std::ostringstream os;
  os << "(" << row + 1 << ", " << col + 1 << ")";
  return os.str();
}

}  // namespace

StructuredMatrix::StructuredMatrix(int rows, int cols, std::vector<Entry> nonzeros)
    : rows_(rows), cols_(cols), nonzeros_(std::move(nonzeros)) {
  if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  for (const Entry& e : nonzeros_) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw InputError("nonzero " + position(e.row, e.col) + " outside a " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " pattern");
    }
  }
  std::sort(nonzeros_.begin(), nonzeros_.end());
  auto dup = std::adjacent_find(nonzeros_.begin(), nonzeros_.end());
  if (dup != nonzeros_.end()) throw InputError("duplicate nonzero " + position(dup->row, dup->col));
}

bool StructuredMatrix::contains(int row, int col) const {
  return std::binary_search(nonzeros_.begin(), nonzeros_.end(), Entry{row, col});
}

SwitchedStructure::SwitchedStructure(int n, std::vector<Subsystem> subsystems)
    : n_(n), subsystems_(std::move(subsystems)) {
  if (n < 1) throw InputError("state dimension n must be positive");
  if (subsystems_.empty()) throw InputError("at least one subsystem is required");
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    const auto& s = subsystems_[i];
    const std::string name = std::to_string(i + 1);
    if (s.a.rows() != n || s.a.cols() != n) {
      throw InputError("A_" + name + " is " + std::to_string(s.a.rows()) + "x" + std::to_string(s.a.cols()) +
                       ", expected " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (s.b.rows() != n) {
      throw InputError("B_" + name + " has " + std::to_string(s.b.rows()) + " rows, expected " + std::to_string(n));
    }
  }
}

int SwitchedStructure::total_inputs() const {
  int total = 0;
  for (const auto& s : subsystems_) total += s.b.cols();
  return total;
}

std::size_t SwitchedStructure::nnz() const {
  std::size_t total = 0;
  for (const auto& s : subsystems_) total += s.a.nnz() + s.b.nnz();
  return total;
}

namespace {

std::vector<Entry> read_entries(const json& list, const std::string& where, int rows, int cols) {
  if (!list.is_array()) throw InputError(where + ": nonzero list must be an array");
  std::vector<Entry> out;
  out.reserve(list.size());
  for (std::size_t k = 0; k < list.size(); ++k) {
    const json& pair = list[k];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
      throw InputError(where + ": entry #" + std::to_string(k + 1) + " must be [row, col]");
    }
    const auto r = pair[0].get<std::int64_t>();
    const auto c = pair[1].get<std::int64_t>();
    if (r < 1 || r > rows || c < 1 || c > cols) {
      throw InputError(where + ": entry [" + std::to_string(r) + ", " + std::to_string(c) + "] outside " +
                       std::to_string(rows) + "x" + std::to_string(cols));
    }
    out.push_back({static_cast<int>(r - 1), static_cast<int>(c - 1)});
  }
  return out;
}

StructuredMatrix read_matrix(const json& list, const std::string& where, int rows, int cols) {
  try {
    return StructuredMatrix(rows, cols, read_entries(list, where, rows, cols));
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw InputError(where + ": " + msg);
  }
}

json entries_json(const StructuredMatrix& m) {
  json out = json::array();
  for (const Entry& e : m.nonzeros()) out.push_back({e.row + 1, e.col + 1});
  return out;
}

}  // namespace

SwitchedStructure parse_system(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("top-level value must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw InputError("missing integer field \"n\"");
  const auto n64 = doc["n"].get<std::int64_t>();
  if (n64 < 1 || n64 > (1 << 20)) throw InputError("\"n\" must be a positive integer");
  const int n = static_cast<int>(n64);
  if (!doc.contains("subsystems") || !doc["subsystems"].is_array() || doc["subsystems"].empty()) {
    throw InputError("\"subsystems\" must be a nonempty array");
  }

  std::vector<Subsystem> subs;
  const json& list = doc["subsystems"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& s = list[i];
    const std::string idx = std::to_string(i + 1);
    if (!s.is_object()) throw InputError("subsystem " + idx + " must be an object");
    if (!s.contains("A")) throw InputError("subsystem " + idx + ": missing \"A\"");
    if (!s.contains("B") || !s["B"].is_object()) throw InputError("subsystem " + idx + ": \"B\" must be an object");
    const json& b = s["B"];
    if (!b.contains("cols") || !b["cols"].is_number_integer() || b["cols"].get<std::int64_t>() < 0) {
      throw InputError("subsystem " + idx + ": B.cols must be a nonnegative integer");
    }
    const int m = static_cast<int>(b["cols"].get<std::int64_t>());
    const json empty = json::array();
    Subsystem sub{read_matrix(s["A"], "A_" + idx, n, n),
                  read_matrix(b.contains("nonzeros") ? b["nonzeros"] : empty, "B_" + idx, n, m)};
    subs.push_back(std::move(sub));
  }
  return SwitchedStructure(n, std::move(subs));
}

std::string serialize_system(const SwitchedStructure& sys) {
  json doc;
  doc["n"] = sys.n();
  doc["subsystems"] = json::array();
  for (const auto& s : sys.subsystems()) {
    doc["subsystems"].push_back({{"A", entries_json(s.a)}, {"B", {{"cols", s.b.cols()}, {"nonzeros", entries_json(s.b)}}}});
  }
  return doc.dump();
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Realization sample_realization(const SwitchedStructure& sys, FieldTag field, std::uint64_t seed) {
  if (field.is_finite() && (field.prime <= (std::uint64_t{1} << 31) || !is_prime(field.prime))) {
    throw std::invalid_argument("finite-field realizations need a prime p > 2^31");
  }
  Realization out{field, seed, {}};
  Rng rng(seed);
  auto draw = [&]() -> Scalar {
    if (field.is_finite()) return std::uint64_t{1} + rng.below(field.prime - 1);
    double v = 0.0;
    while (v == 0.0) v = 2.0 * rng.unit() - 1.0;
    return v;
  };
  for (int i = 0; i < sys.num_subsystems(); ++i) {
    const auto& s = sys.subsystem(i);
    for (const Entry& e : s.a.nonzeros()) out.values.emplace(ParamKey{i, MatrixTag::kA, e.row, e.col}, draw());
    for (const Entry& e : s.b.nonzeros()) out.values.emplace(ParamKey{i, MatrixTag::kB, e.row, e.col}, draw());
  }
  return out;
}

}  // namespace swctl
