#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "charsum/errors.hpp"

namespace charsum {

/* A permutation of {0..k-1}. Products compose left to right:
 * (g * h) first applies g, then h, matching the instruction order of
 * program evaluation. */
class Permutation {
 public:
  explicit Permutation(std::vector<uint8_t> mapping);
  static Permutation identity(int degree);

  int degree() const { return static_cast<int>(map_.size()); }
  uint8_t apply(uint8_t p) const { return map_[p]; }

  Permutation operator*(const Permutation& o) const;
  bool operator==(const Permutation& o) const = default;
  bool operator<(const Permutation& o) const { return map_ < o.map_; }

  // cycle notation with 1-based points, fixed points omitted; "()" = identity
  std::string to_cycles() const;
  static Permutation parse_cycles(const std::string& text, int degree);

 private:
  std::vector<uint8_t> map_;
};

/* Generators of the order-72 group acting on Z3 x Z3 (point (u,v) at
 * index 3u + v): a shifts u, b shifts v, c swaps the coordinates,
 * d negates u, e negates v. */
struct G72Generators {
  Permutation a, b, c, d, e;
};
G72Generators g72_generators();

// word over {a,b,c,d,e} composed left to right; "1" is the identity
Permutation g72_word(const std::string& word);

// the group generated by breadth-first products, identity included
std::vector<Permutation> closure(const std::vector<Permutation>& generators);

struct Instruction {
  int bit;  // 0-based input bit index
  Permutation on_zero, on_one;
};

struct Program {
  std::vector<Instruction> instructions;
  std::vector<Permutation> accepting;
};

struct ProgramResult {
  Permutation element;
  bool accepted;
};

/* Left-to-right product of the instruction outputs on the given input
 * bits; accepts iff the product lies in the accepting set. */
ProgramResult eval_program(const Program& p, const std::vector<int>& input);

/* Line-oriented program text:
 *   bit=<k> zero=<word> one=<word>     (k is 1-based)
 *   accept=<word>
 * Words are interpreted by the supplied parser (g72_word, or cycle
 * notation for permutation groups). */
Program parse_program(const std::string& text,
                      const std::function<Permutation(const std::string&)>& word_parser);
std::string program_to_string(const Program& p);

}  // namespace charsum
