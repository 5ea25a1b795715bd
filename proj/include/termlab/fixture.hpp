#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "termlab/relation.hpp"

namespace termlab {

// A relation fixture file. Line-oriented text: a `REL` header followed by
// `x: y1 y2 ... yk` successor lines, optionally followed by `SUB` and `LIFT`
// sections in the same shape. Successor lists must be strictly increasing.
// `#` starts a comment.
struct RelationFixture {
  FiniteRelation rel;
  std::optional<FiniteRelation> sub;
  std::optional<FiniteRelation> lift;
  ElementSeq universe;  // every element mentioned anywhere, sorted
};

RelationFixture parse_relation_fixture(const std::string& text);
RelationFixture load_relation_fixture(const std::filesystem::path& path);

}  // namespace termlab
