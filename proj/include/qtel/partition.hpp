#pragma once

#include <compare>
#include <vector>

#include "qtel/contract.hpp"

namespace qtel {

// Integer partition: non-increasing sequence of positive parts.
// Immutable after construction; surgery operations return new values.
class Partition {
public:
    Partition() = default;

    // parts must be positive and non-increasing.
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    long long weight() const;
    bool empty() const { return parts_.empty(); }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

// Number of parts equal to k. pre: k >= 1.
int multiplicity(const Partition& p, int k);

// Adds 1 to each of the first `height` parts, zero-padding p to `height`
// parts first. pre: length(p) <= height. Result has exactly `height` parts
// when height >= 1.
Partition add_column(const Partition& p, int height);

// Subtracts 1 from every part; zero parts vanish. pre: length(p) == height.
Partition remove_column(const Partition& p, int height);

// Inserts one part of the given size. pre: size >= 1.
Partition add_part(const Partition& p, int size);

// Deletes one part of the given size. pre: multiplicity(p, size) >= 1.
Partition remove_part(const Partition& p, int size);

// All partitions with at most `rows` parts, each part at most `cols`.
// Order: by length, then lexicographically ascending parts. Count is
// binomial(rows + cols, rows).
std::vector<Partition> enumerate_box(int rows, int cols);

// All partitions with exactly `length` parts, every part even and in
// [2, max_part]. pre: max_part even and >= 0. Same ordering as enumerate_box.
std::vector<Partition> enumerate_even_exact(int length, int max_part);

} // namespace qtel
