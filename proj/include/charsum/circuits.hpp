#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charsum/characters.hpp"

namespace charsum {

enum class GateKind { Input, Const, Mod2, Mod3, And2 };

struct Gate {
  GateKind kind;
  int payload = 0;         // variable index (Input) or bit (Const)
  std::vector<int> wires;  // indices of feeding gates
};

/* A DAG of INPUT/CONST/MOD2/MOD3/AND2 gates in topological index order
 * (every wire points at a lower index) with a single output gate.
 * A MOD_m gate outputs 1 iff the integer sum of its input bits is
 * divisible by m; wiring a gate twice counts its bit twice. */
class Circuit {
 public:
  int add_input(int var);
  int add_const(int bit);
  int add_gate(GateKind kind, std::vector<int> wires);

  int size() const { return static_cast<int>(gates_.size()); }
  const std::vector<Gate>& gates() const { return gates_; }
  int output() const { return output_; }
  void set_output(int gate);

  // gates that are not INPUT or CONST
  int logic_gate_count() const;
  int max_input_var() const;  // -1 when no INPUT gate exists
  int depth() const;          // longest wire path, INPUT/CONST at depth 0

  // x1 = least significant bit of the assignment
  int evaluate(uint64_t x) const;

  std::string to_netlist() const;
  static Circuit parse_netlist(const std::string& text);

 private:
  void check_wire(int w) const;

  std::vector<Gate> gates_;
  int output_ = -1;
};

/* MOD3-of-MOD2 circuit accepting exactly where the sum of the linear
 * characters vanishes mod 3; every term must be linear. */
Circuit characters_to_depth2(const CharacterSum& s);

/* Inverse direction for circuits of that shape: one linear character per
 * MOD2 gate plus zero-form padding so that the zero set of the returned
 * sum is the circuit's acceptance set. */
CharacterSum depth2_to_characters(const Circuit& c);

/* Depth-3 variant: quadratic terms become AND2 gates feeding the term's
 * MOD2 gate. */
Circuit characters_to_depth3(const CharacterSum& s);
CharacterSum depth3_to_characters(const Circuit& c);

}  // namespace charsum
