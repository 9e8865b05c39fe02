#pragma once

#include <string>

#include "scail/memory.hpp"
#include "scail/model.hpp"
#include "scail/rectifiers.hpp"

namespace scail {

// Versioned little-endian binary container. All integers are fixed-width
// little-endian, all tensors are IEEE-754 doubles in row-major order, so
// files are byte-stable across platforms for identical contents.

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

void save_init_store(const InitClassifierStore& store, const std::string& path);
InitClassifierStore load_init_store(const std::string& path);

void save_layer(const RectifiedLayer& layer, const std::string& path);
RectifiedLayer load_layer(const std::string& path);

}  // namespace scail
