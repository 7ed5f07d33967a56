#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubemedian/cube_ball.hpp"
#include "cubemedian/defining_graph.hpp"

namespace cubemedian {

enum class Kind { RACG, RAAG, GraphProductFinite, Coxeter };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& s);

struct Syllable {
  int gen = 0;
  long long exp = 1;
  friend bool operator==(const Syllable& a, const Syllable& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
};

/// Group element as a syllable list. Canonical words are shortlex-least
/// under declaration order of the generators.
struct Word {
  std::vector<Syllable> syllables;
  bool empty() const { return syllables.empty(); }
  friend bool operator==(const Word& a, const Word& b) {
    return a.syllables == b.syllables;
  }
};

/// Word engine for RACGs, RAAGs, graph products of finite cyclic groups,
/// and general Coxeter groups (braid-move closure with a state budget).
class GroupPresentation {
 public:
  static GroupPresentation racg(DefiningGraph g);
  static GroupPresentation raag(DefiningGraph g);
  static GroupPresentation graph_product(
      DefiningGraph g, const std::map<std::string, int>& orders);
  /// Coxeter matrix entries: 1 on the diagonal, m >= 2 off it, 0 = infinity.
  static GroupPresentation coxeter(std::vector<std::string> labels,
                                   std::vector<std::vector<int>> matrix);

  Kind kind() const { return kind_; }
  int generator_count() const { return (int)labels_.size(); }
  const std::string& generator_label(int i) const { return labels_[i]; }
  const std::vector<std::string>& generator_labels() const { return labels_; }
  int generator_index(const std::string& label) const;
  const DefiningGraph& graph() const;
  /// 2 for RACG/Coxeter generators, declared order for GraphProductFinite,
  /// 0 (infinite) for RAAG.
  int order(int gen) const;
  bool commutes(int i, int j) const;
  /// Coxeter matrix entry; 0 encodes infinity. RACG maps onto {2, 0}.
  int coxeter_m(int i, int j) const;

  Word parse_word(const std::string& s) const;
  std::string word_str(const Word& w) const;
  Word normalize(const Word& w) const;
  bool equal(const Word& a, const Word& b) const;
  Word concat(const Word& a, const Word& b) const;
  Word inverse(const Word& w) const;
  Word conjugate(const Word& g, const Word& h) const;  // g h g^-1
  bool is_identity(const Word& w) const { return normalize(w).empty(); }
  /// Generator-ball metric: letters for RACG/RAAG/Coxeter, syllables for
  /// graph products (every nontrivial power is a standard generator).
  long long word_length(const Word& w) const;
  std::vector<int> support(const Word& w) const;
  bool in_special_subgroup(const Word& w,
                           const std::vector<std::string>& sub) const;

  GroupPresentation special_subgroup_presentation(
      const std::vector<int>& gens) const;

  void set_state_budget(long long b) { state_budget_ = b; }
  long long state_budget() const { return state_budget_; }
  void set_vertex_budget(long long b) { vertex_budget_ = b; }
  long long vertex_budget() const { return vertex_budget_; }

  struct BallGenerator {
    Word word;
    std::string label;
  };
  std::vector<BallGenerator> ball_generators() const;

 private:
  GroupPresentation() = default;
  Word normalize_product_kind(const Word& w) const;
  std::vector<int> coxeter_canonical(std::vector<int> letters) const;

  Kind kind_ = Kind::RACG;
  std::vector<std::string> labels_;
  std::map<std::string, int> label_index_;
  DefiningGraph graph_;
  bool has_graph_ = false;
  std::vector<int> orders_;
  std::vector<std::vector<int>> cox_;
  long long state_budget_ = 1'000'000;
  long long vertex_budget_ = 500'000;
};

/// Cayley ball enumerated in canonical forms, deterministic ids:
/// layered by word length, lexicographic within a layer.
struct EnumeratedBall {
  std::vector<Word> elements;  // index 0 = identity
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::string> edge_labels;
  int radius = 0;

  int find(const std::string& canonical_name) const;
};

EnumeratedBall enumerate_ball(const GroupPresentation& pres, int radius);

/// 1-skeleton ball as a CubeBall (no squares; see builders for filled balls).
CubeBall cayley_ball(const GroupPresentation& pres, int radius);

std::vector<Word> centralizer_in_ball(const GroupPresentation& pres,
                                      const Word& g, int radius);

/// The same RACG presented with Coxeter matrix entries in {2, infinity}.
GroupPresentation racg_as_coxeter(const DefiningGraph& g);

}  // namespace cubemedian
