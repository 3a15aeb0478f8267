/**
 * @file structure.hpp
 * @brief One structure of any of the four kinds, as read from or written to a file.
 */
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "vakit/vertex.hpp"

namespace vakit {

enum class StructureKind { Algebra, Coalgebra, Module, Comodule };

std::string kind_name(StructureKind k);
StructureKind kind_from_name(const std::string& s);

struct Structure {
  StructureKind kind = StructureKind::Algebra;
  int conductor = 1;
  std::shared_ptr<const VertexAlgebraData> algebra;      // Algebra, or base of Module
  std::shared_ptr<const VertexCoalgebraData> coalgebra;  // Coalgebra, or base of Comodule
  std::optional<ModuleData> module;
  std::optional<ComoduleData> comodule;

  static Structure of(VertexAlgebraData a);
  static Structure of(VertexCoalgebraData c);
  static Structure of(ModuleData m);
  static Structure of(ComoduleData m);
};

}  // namespace vakit
