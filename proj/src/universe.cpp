#include "protpref/universe.hpp"

#include <set>

#include "protpref/error.hpp"

namespace protpref {

std::optional<std::size_t> Universe::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

std::size_t Universe::require_index(std::string_view label) const {
  if (auto idx = index_of(label)) return *idx;
  throw Error(ErrorKind::UniverseMismatch,
              "class '" + std::string(label) + "' is not in universe " + id);
}

UniversePtr make_universe(std::string id, std::vector<std::string> labels) {
  if (labels.empty()) throw Error(ErrorKind::InvalidProfile, "universe must be non-empty");
  std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() != labels.size())
    throw Error(ErrorKind::InvalidProfile, "universe labels must be distinct");
  return std::make_shared<const Universe>(Universe{std::move(id), std::move(labels)});
}

UniversePtr amino_universe(bool include_homopairs) {
  std::vector<std::string> labels;
  for (const auto& cls : class_universe(include_homopairs)) labels.push_back(cls.label());
  return make_universe(include_homopairs ? "aa210" : "aa190", std::move(labels));
}

UniversePtr synthetic_universe(std::size_t m) {
  const auto all = class_universe(true);
  if (m == 0 || m > all.size())
    throw Error(ErrorKind::BadSpec, "synthetic universe size must be in 1..210");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back(all[i].label());
  return make_universe("aa210[:" + std::to_string(m) + "]", std::move(labels));
}

bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace protpref
