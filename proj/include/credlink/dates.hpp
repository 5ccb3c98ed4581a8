#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace credlink {

// Calendar date. Thin value wrapper around a day count so that series code
// can compare, hash, and difference dates cheaply.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    static Date from_iso(const std::string& text);  // "2004-01-01"
    static Date from_days(std::int64_t serial);     // days since 1970-01-01

    std::string to_iso() const;
    std::int64_t serial() const { return serial_; }

    int year() const;
    unsigned month() const;
    unsigned day() const;
    bool is_weekday() const;  // Monday..Friday

    Date plus_days(std::int64_t n) const { return from_days(serial_ + n); }

    auto operator<=>(const Date&) const = default;

private:
    std::int64_t serial_ = 0;
};

// All weekdays in [first, last], both ends included when they are weekdays.
std::vector<Date> weekday_grid(Date first, Date last);

}  // namespace credlink
