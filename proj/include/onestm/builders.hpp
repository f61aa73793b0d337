#pragma once

// Constructors for the built-in machines: the unary-versus-binary comparator
// and its generalization to an arbitrary base-k counter, plus the well-formed
// comparator input u^n 0^m h.

#include <stdexcept>
#include <string>

#include "onestm/core.hpp"

namespace onestm {

inline constexpr int kMinBase = 2;
inline constexpr int kMaxBase = 10;  // digits stay single characters '0'..'9'

// Comparator between a unary counter (the u region) and a base-k counter
// (the digit region). The u region is consumed one cell per counter
// increment via the u -> U -> C marker cycle (B restores C on the way back);
// a digit d below k-1 increments in place, the top digit k-1 becomes the
// pending zero Z and carries rightward. Reading the end marker h halts;
// running off the left end diverges. On u^n 0^m h the machine halts iff
// n >= k^m - 1.
inline OneStateMachine build_unary_vs_base(int base) {
  if (base < kMinBase || base > kMaxBase)
    throw std::out_of_range("base must be between 2 and 10, got " +
                            std::to_string(base));
  MachineDescription desc;
  desc.blank = kBlank;
  desc.input = {'u', '0', 'h'};
  desc.halting = {'h'};
  desc.rules.emplace_back('u', Rule{'U', Move::kRight});
  desc.rules.emplace_back('0', Rule{'1', Move::kLeft});
  desc.rules.emplace_back('U', Rule{'C', Move::kRight});
  for (int d = 1; d < base; ++d) {
    Symbol digit = static_cast<Symbol>('0' + d);
    if (d < base - 1)
      desc.rules.emplace_back(digit,
                              Rule{static_cast<Symbol>(digit + 1), Move::kLeft});
    else
      desc.rules.emplace_back(digit, Rule{'Z', Move::kRight});
  }
  desc.rules.emplace_back('Z', Rule{'0', Move::kLeft});
  desc.rules.emplace_back('C', Rule{'B', Move::kLeft});
  desc.rules.emplace_back('B', Rule{'C', Move::kRight});
  desc.rules.emplace_back(kBlank, Rule{kBlank, Move::kLeft});
  ValidationResult result = validate(desc);
  if (!result.ok())
    throw std::logic_error("builder produced an invalid machine");
  return *result.machine;
}

// The unary-versus-binary comparator, written out rule by rule. Structurally
// identical to build_unary_vs_base(2); both constructions are kept so that
// the equality can be checked rather than assumed.
inline OneStateMachine build_mcc() {
  MachineDescription desc;
  desc.blank = kBlank;
  desc.input = {'u', '0', 'h'};
  desc.halting = {'h'};
  desc.rules.emplace_back('u', Rule{'U', Move::kRight});
  desc.rules.emplace_back('0', Rule{'1', Move::kLeft});
  desc.rules.emplace_back('U', Rule{'C', Move::kRight});
  desc.rules.emplace_back('1', Rule{'Z', Move::kRight});
  desc.rules.emplace_back('Z', Rule{'0', Move::kLeft});
  desc.rules.emplace_back('C', Rule{'B', Move::kLeft});
  desc.rules.emplace_back('B', Rule{'C', Move::kRight});
  desc.rules.emplace_back(kBlank, Rule{kBlank, Move::kLeft});
  ValidationResult result = validate(desc);
  if (!result.ok())
    throw std::logic_error("builder produced an invalid machine");
  return *result.machine;
}

// u repeated n times, then '0' repeated m times, then h.
inline std::string well_formed_input(std::size_t n, std::size_t m) {
  std::string s;
  s.reserve(n + m + 1);
  s.append(n, 'u');
  s.append(m, '0');
  s.push_back('h');
  return s;
}

}  // namespace onestm
