#pragma once

#include <string>

#include "ldl/calculus.hpp"
#include "ldl/order.hpp"

namespace ldl::test {

inline FreeCalculus free_calc(const std::string& text) { return FreeCalculus(parse_basis(text)); }

inline FinitePoset poset(const std::string& text) { return parse_poset(text); }

inline const char* kMPoset = "elem bot\nelem a\nelem b\nelem c\nelem d\ncover bot a\ncover bot b\ncover a c\ncover a d\ncover b c\ncover b d\n";
inline const char* kDiamond = "elem bot\nelem a\nelem b\nelem top\ncover bot a\ncover bot b\ncover a top\ncover b top\n";
inline const char* kChain2 = "elem bot\nelem a\ncover bot a\n";
inline const char* kFlat3 = "elem bot\nelem a\nelem b\ncover bot a\ncover bot b\n";
inline const char* kOnePoint = "elem bot\n";

}  // namespace ldl::test
