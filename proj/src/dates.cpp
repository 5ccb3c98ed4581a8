#include "credlink/dates.hpp"

#include <cstdio>

#include "credlink/errors.hpp"

namespace credlink {

namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(std::int64_t serial) {
    return chr::year_month_day{chr::sys_days{chr::days{serial}}};
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
    const chr::year_month_day ymd{chr::year{year}, chr::month{month},
                                  chr::day{day}};
    if (!ymd.ok()) {
        throw InvalidSeries("invalid calendar date " + std::to_string(year) +
                            "-" + std::to_string(month) + "-" +
                            std::to_string(day));
    }
    serial_ = chr::sys_days{ymd}.time_since_epoch().count();
}

Date Date::from_iso(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) {
        throw InvalidSeries("malformed ISO date '" + text + "'");
    }
    return Date(y, m, d);
}

Date Date::from_days(std::int64_t serial) {
    Date d;
    d.serial_ = serial;
    return d;
}

std::string Date::to_iso() const {
    const auto ymd = to_ymd(serial_);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

int Date::year() const { return int(to_ymd(serial_).year()); }
unsigned Date::month() const { return unsigned(to_ymd(serial_).month()); }
unsigned Date::day() const { return unsigned(to_ymd(serial_).day()); }

bool Date::is_weekday() const {
    const chr::weekday wd{chr::sys_days{chr::days{serial_}}};
    const unsigned iso = wd.iso_encoding();  // Mon=1 .. Sun=7
    return iso <= 5;
}

std::vector<Date> weekday_grid(Date first, Date last) {
    std::vector<Date> out;
    if (last < first) return out;
    out.reserve(static_cast<std::size_t>((last.serial() - first.serial()) * 5 / 7 + 2));
    for (std::int64_t s = first.serial(); s <= last.serial(); ++s) {
        Date d = Date::from_days(s);
        if (d.is_weekday()) out.push_back(d);
    }
    return out;
}

}  // namespace credlink
