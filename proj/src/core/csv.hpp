#pragma once

#include <iosfwd>
#include <string>

#include "core/types.hpp"

namespace msl {

// Dataset CSV: header `x1,...,xd,label`, decimal float features, integer
// label, UTF-8. Row order is preserved (block pairing depends on it).
Dataset parse_dataset_csv(std::istream& in);
void write_dataset_csv(const Dataset& data, std::ostream& out);

Dataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const Dataset& data, const std::string& path);

}  // namespace msl
