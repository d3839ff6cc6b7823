#include "rydl/timeseries.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rydl {

std::vector<double>& TimeSeries::add_column(const std::string& name) {
    for (auto& [n, v] : columns)
        if (n == name) throw std::invalid_argument("TimeSeries: duplicate column " + name);
    columns.emplace_back(name, std::vector<double>{});
    return columns.back().second;
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
    for (auto& [n, v] : columns)
        if (n == name) return v;
    throw std::invalid_argument("TimeSeries: no column " + name);
}

bool TimeSeries::has_column(const std::string& name) const {
    for (auto& [n, v] : columns)
        if (n == name) return true;
    return false;
}

void TimeSeries::check() const {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::logic_error("TimeSeries: times not strictly increasing");
    for (auto& [n, v] : columns)
        if (v.size() != times.size())
            throw std::logic_error("TimeSeries: column " + n + " length mismatch");
}

void TimeSeries::write_csv(const std::string& path) const {
    check();
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "t_omega";
    for (auto& [n, v] : columns) os << ',' << n;
    os << '\n';
    char buf[64];
    auto emit = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
    };
    for (std::size_t r = 0; r < times.size(); ++r) {
        emit(times[r]);
        for (auto& [n, v] : columns) {
            os << ',';
            emit(v[r]);
        }
        os << '\n';
    }
}

void TimeSeries::write_meta(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << meta.dump(2) << '\n';
}

}  // namespace rydl
