#pragma once

#include <array>
#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "protpref/structure.hpp"

namespace protpref {

/// Unordered pair of amino-acid letters, stored canonically (first <= second).
class InteractionClass {
 public:
  /// Canonicalizes; both letters must be standard amino acids.
  static InteractionClass of(char a, char b);
  /// Parses the "X-Y" label form.
  static InteractionClass from_label(std::string_view label);

  char first() const { return first_; }
  char second() const { return second_; }
  bool is_homopair() const { return first_ == second_; }
  std::string label() const;

  friend auto operator<=>(const InteractionClass&, const InteractionClass&) = default;

 private:
  InteractionClass(char a, char b) : first_(a), second_(b) {}
  char first_;
  char second_;
};

/// 210 classes with homopairs, 190 without; lexicographic order.
std::vector<InteractionClass> class_universe(bool include_homopairs);

struct ContactConfig {
  double threshold_tau = 8.0;
  DistanceMode mode = DistanceMode::c_alpha;
  int min_seq_separation = 3;
  bool cross_chain = false;

  void validate() const;
};

struct ResidueRef {
  char chain = ' ';
  int seq = 0;

  friend bool operator==(const ResidueRef&, const ResidueRef&) = default;
};

struct InteractionInstance {
  std::string protein_id;
  InteractionClass cls = InteractionClass::of('A', 'A');
  ResidueRef first;
  ResidueRef second;
  double distance = 0.0;
  double score = 0.0;

  friend bool operator==(const InteractionInstance&, const InteractionInstance&) = default;
};

/// Energetic score e(i) attached to each contact.
class Scorer {
 public:
  enum class Kind { unit_count, table };
  using Table = std::array<std::array<double, 20>, 20>;

  static Scorer unit_count() { return Scorer(Kind::unit_count, {}, false); }
  /// Table must be symmetric within 1e-9 (Error{BadTable}).
  static Scorer from_table(const Table& table, bool negate = true);

  Kind kind() const { return kind_; }
  bool negate() const { return negate_; }
  const Table& table() const { return table_; }
  Scorer with_negate(bool negate) const { return Scorer(kind_, table_, negate); }

  double lookup(char a, char b) const;
  double score(const InteractionClass& cls) const;

 private:
  Scorer(Kind kind, const Table& table, bool negate) : kind_(kind), table_(table), negate_(negate) {}
  Kind kind_;
  Table table_;
  bool negate_;
};

/// CSV: header ",A,C,...,Y" then 20 rows "letter,v1,...,v20". Letters may
/// appear in any order but each exactly once.
Scorer load_score_table(std::istream& csv, bool negate = true);

/// All residue pairs within threshold_tau. Intra-chain pairs must also be
/// at least min_seq_separation apart; inter-chain pairs only when
/// cross_chain is set. Output order: pairs (i, j), i < j, over residues
/// flattened in chain order. Parallel over the first residue of each pair.
std::vector<InteractionInstance> extract_instances(const ProteinStructure& structure,
                                                   const ContactConfig& config,
                                                   const Scorer& scorer);

/// Single-threaded reference for extract_instances.
std::vector<InteractionInstance> extract_instances_serial(const ProteinStructure& structure,
                                                          const ContactConfig& config,
                                                          const Scorer& scorer);

/// protein_id,class,chain_i,seq_i,chain_j,seq_j,distance,score
void write_instances_csv(std::ostream& out, std::span<const InteractionInstance> instances);
std::vector<InteractionInstance> read_instances_csv(std::istream& in);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace protpref
