#include "qtel/partition.hpp"

#include <algorithm>
#include <numeric>

namespace qtel {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        require(parts_[i] > 0, "Partition: parts must be positive");
        if (i > 0) require(parts_[i - 1] >= parts_[i], "Partition: parts must be non-increasing");
    }
}

long long Partition::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0LL);
}

int multiplicity(const Partition& p, int k) {
    require(k >= 1, "multiplicity: k must be >= 1");
    return static_cast<int>(std::count(p.parts().begin(), p.parts().end(), k));
}

Partition add_column(const Partition& p, int height) {
    require(height >= 0, "add_column: height must be nonnegative");
    require(p.length() <= height, "add_column: column would not be leftmost");
    std::vector<int> out(static_cast<std::size_t>(height), 0);
    std::copy(p.parts().begin(), p.parts().end(), out.begin());
    for (int& part : out) ++part;
    return Partition(std::move(out));
}

Partition remove_column(const Partition& p, int height) {
    require(p.length() == height, "remove_column: every row must lose one cell");
    std::vector<int> out;
    out.reserve(p.parts().size());
    for (int part : p.parts())
        if (part > 1) out.push_back(part - 1);
    return Partition(std::move(out));
}

Partition add_part(const Partition& p, int size) {
    require(size >= 1, "add_part: size must be >= 1");
    std::vector<int> out = p.parts();
    out.insert(std::upper_bound(out.begin(), out.end(), size, std::greater<int>()), size);
    return Partition(std::move(out));
}

Partition remove_part(const Partition& p, int size) {
    require(multiplicity(p, size) >= 1, "remove_part: part absent");
    std::vector<int> out = p.parts();
    out.erase(std::find(out.begin(), out.end(), size));
    return Partition(std::move(out));
}

namespace {

// Non-increasing sequences of exactly `len` parts from `values` (ascending),
// lexicographically ascending. `values` is the allowed part set.
void gen_fixed_length(const std::vector<int>& values, int len, std::vector<int>& acc,
                      std::vector<Partition>& out) {
    if (static_cast<int>(acc.size()) == len) {
        std::vector<int> parts(acc.rbegin(), acc.rend());
        out.emplace_back(std::move(parts));
        return;
    }
    // acc holds the tail in reverse (smallest first); the next value must be
    // >= the previous one to keep the final sequence non-increasing.
    int lo = acc.empty() ? 0 : acc.back();
    for (int v : values) {
        if (v < lo) continue;
        acc.push_back(v);
        gen_fixed_length(values, len, acc, out);
        acc.pop_back();
    }
}

std::vector<Partition> enumerate_with_values(const std::vector<int>& values, int max_len) {
    std::vector<Partition> out;
    std::vector<int> acc;
    for (int len = 0; len <= max_len; ++len)
        gen_fixed_length(values, len, acc, out);
    return out;
}

} // namespace

std::vector<Partition> enumerate_box(int rows, int cols) {
    require(rows >= 0 && cols >= 0, "enumerate_box: dimensions must be nonnegative");
    std::vector<int> values;
    for (int v = 1; v <= cols; ++v) values.push_back(v);
    return enumerate_with_values(values, rows);
}

std::vector<Partition> enumerate_even_exact(int length, int max_part) {
    require(length >= 0, "enumerate_even_exact: length must be nonnegative");
    require(max_part >= 0 && max_part % 2 == 0, "enumerate_even_exact: max_part must be even");
    std::vector<int> values;
    for (int v = 2; v <= max_part; v += 2) values.push_back(v);
    std::vector<Partition> out;
    std::vector<int> acc;
    gen_fixed_length(values, length, acc, out);
    return out;
}

} // namespace qtel
