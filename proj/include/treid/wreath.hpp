#ifndef TREID_WREATH_HPP
#define TREID_WREATH_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treid/errors.hpp"
#include "treid/perm.hpp"
#include "treid/portrait.hpp"
#include "treid/tree.hpp"

namespace treid {

struct Letter {
  std::string name;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

// Word in the declared generators; reduced only by free cancellation of
// adjacent inverse pairs, never rewritten further.
class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const Letter& l : letters_)
      if (l.exponent != 1 && l.exponent != -1)
        throw WordError("letter exponent must be +1 or -1");
  }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  GroupWord& append(const std::string& name, int exponent) {
    if (exponent != 1 && exponent != -1)
      throw WordError("letter exponent must be +1 or -1");
    letters_.push_back({name, exponent});
    return *this;
  }

  GroupWord concat(const GroupWord& rhs) const {
    GroupWord out = *this;
    out.letters_.insert(out.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return out;
  }

  GroupWord inverse() const {
    GroupWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      out.letters_.push_back({it->name, -it->exponent});
    return out;
  }

  GroupWord freely_reduced() const {
    GroupWord out;
    for (const Letter& l : letters_) {
      if (!out.letters_.empty() && out.letters_.back().name == l.name &&
          out.letters_.back().exponent == -l.exponent)
        out.letters_.pop_back();
      else
        out.letters_.push_back(l);
    }
    return out;
  }

  // "a*b^-1*c"; the empty word renders as "e".
  std::string to_string() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      if (k) s += "*";
      s += letters_[k].name;
      if (letters_[k].exponent == -1) s += "^-1";
    }
    return s;
  }

  // Accepts '*' or whitespace separators and exponents like a^3 / a^-2.
  static GroupWord parse(const std::string& text) {
    GroupWord out;
    std::string token;
    auto flush = [&out](const std::string& tok) {
      if (tok.empty()) return;
      std::size_t caret = tok.find('^');
      std::string name = tok.substr(0, caret);
      long exp = 1;
      if (caret != std::string::npos) {
        std::string e = tok.substr(caret + 1);
        try {
          exp = std::stol(e);
        } catch (const std::exception&) {
          throw ParseError("bad exponent in word token '" + tok + "'");
        }
      }
      if (name.empty()) throw ParseError("empty generator name in word");
      if (name == "e" && caret == std::string::npos) return;  // identity token
      int step = exp >= 0 ? 1 : -1;
      for (long k = 0; k != exp; k += step) out.append(name, step);
    };
    for (char c : text) {
      if (c == '*' || c == ' ' || c == '\t') {
        flush(token);
        token.clear();
      } else {
        token += c;
      }
    }
    flush(token);
    return out;
  }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<Letter> letters_;
};

struct AutomatonState {
  Perm root_perm;                     // degree = alphabet size
  std::vector<std::string> sections;  // one state name per letter

  friend bool operator==(const AutomatonState&, const AutomatonState&) = default;
};

// Finite-state self-similar group specification: states by root permutation
// and sections, plus optional explicit portrait generators on the same tree.
// The state name "e" is reserved for the identity.
class WreathRecursion {
 public:
  WreathRecursion(std::uint32_t alphabet_size,
                  std::map<std::string, AutomatonState> states,
                  std::vector<std::string> generators,
                  std::map<std::string, Portrait> extra_portraits = {})
      : alphabet_(alphabet_size),
        states_(std::move(states)),
        generators_(std::move(generators)),
        extra_portraits_(std::move(extra_portraits)) {
    if (alphabet_ < 2) throw Error("alphabet size must be >= 2");
    if (states_.count(identity_state()))
      throw Error("state name 'e' is reserved for the identity");
    for (const auto& [name, st] : states_) {
      if (st.root_perm.degree() != alphabet_)
        throw Error("state '" + name + "': root permutation degree != alphabet size");
      if (st.sections.size() != alphabet_)
        throw Error("state '" + name + "': expected one section per letter");
      for (const std::string& sec : st.sections)
        if (sec != identity_state() && !states_.count(sec))
          throw Error("state '" + name + "': unknown section '" + sec + "'");
    }
    BranchingSequence t = tree();
    for (const auto& [name, p] : extra_portraits_) {
      if (states_.count(name) || name == identity_state())
        throw Error("portrait generator '" + name + "' clashes with a state name");
      if (p.tree() != t)
        throw Error("portrait generator '" + name + "' lives on a different tree");
    }
    if (generators_.empty()) throw Error("at least one generator required");
    for (const std::string& g : generators_)
      if (!states_.count(g) && !extra_portraits_.count(g) && g != identity_state())
        throw Error("generator '" + g + "' is not a state or portrait");
  }

  static const std::string& identity_state() {
    static const std::string e = "e";
    return e;
  }

  std::uint32_t alphabet_size() const { return alphabet_; }
  BranchingSequence tree() const { return BranchingSequence::constant(alphabet_); }
  const std::map<std::string, AutomatonState>& states() const { return states_; }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::map<std::string, Portrait>& extra_portraits() const {
    return extra_portraits_;
  }

  bool has_generator(const std::string& name) const {
    for (const std::string& g : generators_)
      if (g == name) return true;
    return false;
  }

  // Depth-d truncation of a state's action, by recursive label fill.
  Portrait state_portrait(const std::string& name, std::size_t depth) const {
    if (name != identity_state() && !states_.count(name))
      throw WordError("unknown state '" + name + "'");
    Portrait out(tree(), depth);
    fill_state(out, Vertex{}, name, depth);
    return out;
  }

  // Portrait of any declared generator.  Portrait generators denote
  // finitary isometries: past their stored depth they act as the identity.
  Portrait generator_portrait(const std::string& name, std::size_t depth) const {
    auto it = extra_portraits_.find(name);
    if (it != extra_portraits_.end()) return extended(it->second, depth);
    return state_portrait(name, depth);
  }

  friend bool operator==(const WreathRecursion&, const WreathRecursion&) = default;

 private:
  void fill_state(Portrait& out, const Vertex& at, const std::string& name,
                  std::size_t depth) const {
    if (at.level() >= depth || name == identity_state()) return;
    const AutomatonState& st = states_.at(name);
    out.set_label(at, st.root_perm);
    for (std::uint32_t s = 0; s < alphabet_; ++s)
      fill_state(out, at.child(s), st.sections[s], depth);
  }

  std::uint32_t alphabet_;
  std::map<std::string, AutomatonState> states_;
  std::vector<std::string> generators_;
  std::map<std::string, Portrait> extra_portraits_;
};

// Depth-d truncation of the automorphism named by the word.
inline Portrait portrait_of_word(const WreathRecursion& spec, const GroupWord& word,
                                 std::size_t depth) {
  Portrait acc(spec.tree(), depth);
  for (const Letter& l : word.letters()) {
    if (!spec.has_generator(l.name) && l.name != WreathRecursion::identity_state())
      throw WordError("undeclared generator '" + l.name + "'");
    Portrait g = spec.generator_portrait(l.name, depth);
    acc = compose(acc, l.exponent == 1 ? g : invert(g));
  }
  return acc;
}

// True iff the two words induce the same map on L_d.  A necessary condition
// for equality in the group; report as "equal at depth d", never "equal".
inline bool equal_at_depth(const WreathRecursion& spec, const GroupWord& w1,
                           const GroupWord& w2, std::size_t depth) {
  return level_perm(portrait_of_word(spec, w1, depth), depth) ==
         level_perm(portrait_of_word(spec, w2, depth), depth);
}

// Standard recursions for the built-in groups.
//   grigorchuk               a,b,c,d on the binary tree
//   gupta-sidki-3            a,t on the ternary tree
//   full-binary-finitary(d)  single-vertex swaps at all levels < d
inline WreathRecursion builtin_group(const std::string& name) {
  if (name == "grigorchuk") {
    Perm swap = Perm::from_cycles(2, {{0, 1}});
    Perm id2 = Perm::identity(2);
    std::map<std::string, AutomatonState> states{
        {"a", {swap, {"e", "e"}}},
        {"b", {id2, {"a", "c"}}},
        {"c", {id2, {"a", "d"}}},
        {"d", {id2, {"e", "b"}}},
    };
    return WreathRecursion(2, std::move(states), {"a", "b", "c", "d"});
  }
  if (name == "gupta-sidki-3") {
    Perm cycle = Perm::from_cycles(3, {{0, 1, 2}});
    Perm id3 = Perm::identity(3);
    std::map<std::string, AutomatonState> states{
        {"a", {cycle, {"e", "e", "e"}}},
        {"a_inv", {cycle.inverse(), {"e", "e", "e"}}},
        {"t", {id3, {"a", "a_inv", "t"}}},
    };
    return WreathRecursion(3, std::move(states), {"a", "t"});
  }
  const std::string finitary = "full-binary-finitary(";
  if (name.rfind(finitary, 0) == 0 && name.back() == ')') {
    std::string arg = name.substr(finitary.size(), name.size() - finitary.size() - 1);
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
      throw UnknownGroupError("bad depth in '" + name + "'");
    std::size_t d = std::stoul(arg);
    if (d < 1) throw UnknownGroupError("finitary depth must be >= 1");
    BranchingSequence tree = BranchingSequence::constant(2);
    std::map<std::string, Portrait> portraits;
    std::vector<std::string> gens;
    for (std::size_t level = 0; level < d; ++level) {
      for (std::uint64_t idx = 0; idx < tree.level_size(level); ++idx) {
        Vertex v = vertex_at(tree, level, idx);
        std::string gname = "sw";
        for (std::uint32_t s : v.path) gname += "_" + std::to_string(s);
        portraits.emplace(gname, vertex_swap(tree, v, level + 1));
        gens.push_back(gname);
      }
    }
    return WreathRecursion(2, {}, std::move(gens), std::move(portraits));
  }
  throw UnknownGroupError("unknown builtin group '" + name + "'");
}

}  // namespace treid

#endif  // TREID_WREATH_HPP
