// Copyright 2026 The simpeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMPEVAL_SHAPES_HPP_
#define SIMPEVAL_SHAPES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "simpeval/corpus.hpp"
#include "simpeval/mesh.hpp"

// Procedural stand-ins for the study objects: animal-like blobs with limbs
// and boxy or turned artifacts, 4000-9000 triangles each, y up.
namespace simpeval::shapes {

struct ShapeInfo {
  std::string name;
  ObjectType type = ObjectType::kAnimal;
};

// Six animals then six artifacts.
const std::vector<ShapeInfo>& bundled();
const std::vector<ShapeInfo>& practice();

// Throws InvalidArgument for an unknown name.
TriMesh make(std::string_view name);

}  // namespace simpeval::shapes

#endif  // SIMPEVAL_SHAPES_HPP_
