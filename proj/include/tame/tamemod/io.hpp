#pragma once

#include <string>

#include "tame/tamemod/functor.hpp"

namespace tamemod {

// JSON presentation of a truncated functor, schema "tamemod-v1":
// { "N": int, "grade": int,
//   "levels": [ {"generators": int, "relations": [[int]]} ],
//   "transpositions": { "n,i": [[int]] },
//   "stab": [ [[int]] ] }
// Matrices are row lists; hom matrices have one row per target generator.
TruncIFunctor from_json_text(const std::string& text);
std::string to_json_text(const TruncIFunctor& f);

TruncIFunctor load_functor(const std::string& path);
void save_functor(const TruncIFunctor& f, const std::string& path);

}  // namespace tamemod
