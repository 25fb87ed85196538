#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mlrules {

/// Dense row-major matrix of {0,1} cells (label matrices and predictions).
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
    std::uint8_t& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }

    std::span<const std::uint8_t> row(std::size_t r) const { return {cells_.data() + r * cols_, cols_}; }
    std::span<std::uint8_t> row(std::size_t r) { return {cells_.data() + r * cols_, cols_}; }

    const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

    bool operator==(const BinaryMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> cells_;
};

}  // namespace mlrules
