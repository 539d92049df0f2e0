// Column-oriented dataset: named real vectors of equal length.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "confreg/errors.hpp"

namespace confreg {

class Dataset {
public:
    Dataset() = default;

    Dataset(std::vector<std::string> names, std::vector<std::vector<double>> columns)
        : names_(std::move(names)), cols_(std::move(columns)) {
        validate();
    }

    std::size_t n() const { return cols_.empty() ? 0 : cols_.front().size(); }
    std::size_t n_columns() const { return cols_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    bool has_column(std::string_view name) const {
        return find(name) != npos;
    }

    const std::vector<double>& col(std::string_view name) const {
        const std::size_t i = find(name);
        if (i == npos)
            throw DataError("dataset has no column named '" + std::string(name) + "'");
        return cols_[i];
    }

    const std::vector<double>& col(std::size_t i) const { return cols_.at(i); }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t find(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return npos;
    }

    void validate() const {
        if (names_.size() != cols_.size())
            throw DataError("dataset: column name count does not match column count");
        if (cols_.empty())
            throw DataError("dataset: no columns");
        const std::size_t rows = cols_.front().size();
        if (rows < 2)
            throw DataError("dataset: need n >= 2 observations, got " + std::to_string(rows));
        for (std::size_t i = 0; i < cols_.size(); ++i) {
            if (cols_[i].size() != rows)
                throw DataError("dataset: column '" + names_[i] + "' has length " +
                                std::to_string(cols_[i].size()) + ", expected " + std::to_string(rows));
            for (double v : cols_[i])
                if (!std::isfinite(v))
                    throw DataError("dataset: column '" + names_[i] + "' contains a non-finite value");
        }
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw DataError("dataset: duplicate column name '" + names_[i] + "'");
    }

    std::vector<std::string> names_;
    std::vector<std::vector<double>> cols_;
};

} // namespace confreg
