#pragma once

#include "ecpcs/matrix.hpp"
#include "ecpcs/types.hpp"

#include <optional>
#include <string>

namespace ecpcs {

/// Load a UTF-8 CSV with a header row: numeric feature columns plus an
/// optional label column (any scalar type; values become contiguous ids by
/// first appearance). Throws ParseError with the 1-based row/column on a
/// non-numeric feature cell, and "empty dataset" when only a header is found.
Dataset load_dataset(const std::string& path,
                     const std::optional<std::string>& label_column = std::nullopt);

/// Full row-major matrix dump, 17 significant digits per entry.
void write_matrix_csv(const SquareMatrix& matrix, const std::string& path);

}  // namespace ecpcs
