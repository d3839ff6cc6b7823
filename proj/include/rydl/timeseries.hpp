#pragma once

#include <deque>
#include <string>
#include <vector>

#include <json.hpp>

namespace rydl {

// (time, named columns) rows with run metadata; the primary output format.
struct TimeSeries {
    std::vector<double> times;
    std::deque<std::pair<std::string, std::vector<double>>> columns;  // deque: stable refs across add_column
    nlohmann::json meta;

    std::vector<double>& add_column(const std::string& name);
    const std::vector<double>& column(const std::string& name) const;
    bool has_column(const std::string& name) const;

    void append_time(double t) { times.push_back(t); }
    void check() const;  // strictly increasing times, equal column lengths

    // RFC-4180-style CSV, header row, '.' decimal, time column `t_omega`
    void write_csv(const std::string& path) const;
    void write_meta(const std::string& path) const;
};

}  // namespace rydl
