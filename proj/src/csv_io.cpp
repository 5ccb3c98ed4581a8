#include "credlink/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "credlink/errors.hpp"

namespace credlink {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double(const std::string& text, std::size_t row, std::size_t column) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("expected a number, got '" + text + "'", row, column);
    }
    return value;
}

Date parse_date(const std::string& text, std::size_t row, std::size_t column) {
    try {
        return Date::from_iso(text);
    } catch (const Error&) {
        throw ParseError("expected an ISO date, got '" + text + "'", row, column);
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'", 0, 0);
    }
    return in;
}

}  // namespace

void MarketDataSet::add(ObservationSeries series) {
    if (!series.kind()) {
        throw InvalidSeries("MarketDataSet: raw series must carry a field kind");
    }
    auto& slot = by_entity_[series.entity_id()];
    const FieldKind kind = *series.kind();
    if (slot.count(kind)) {
        throw InvalidSeries("MarketDataSet: duplicate series " + series.entity_id() +
                            "/" + to_string(kind));
    }
    slot.emplace(kind, std::move(series));
}

const ObservationSeries* MarketDataSet::find(const std::string& entity_id,
                                             FieldKind kind) const {
    const auto entity = by_entity_.find(entity_id);
    if (entity == by_entity_.end()) return nullptr;
    const auto series = entity->second.find(kind);
    if (series == entity->second.end()) return nullptr;
    return &series->second;
}

std::vector<std::string> MarketDataSet::entity_ids() const {
    std::vector<std::string> ids;
    ids.reserve(by_entity_.size());
    for (const auto& [id, _] : by_entity_) ids.push_back(id);
    return ids;
}

MarketDataSet load_observations_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty observations file '" + path + "'", 1, 1);
    }
    if (split_line(line) != std::vector<std::string>{"date", "entity_id",
                                                     "field_kind", "value"}) {
        throw ParseError("observations header must be date,entity_id,field_kind,value",
                         1, 1);
    }

    struct Point {
        Date date;
        double value;
    };
    std::map<std::pair<std::string, FieldKind>, std::vector<Point>> buckets;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()),
                             row, 1);
        }
        const Date date = parse_date(fields[0], row, 1);
        FieldKind kind;
        try {
            kind = field_kind_from_string(fields[2]);
        } catch (const Error&) {
            throw ParseError("unknown field kind '" + fields[2] + "'", row, 3);
        }
        const double value = parse_double(fields[3], row, 4);
        buckets[{fields[1], kind}].push_back({date, value});
    }

    MarketDataSet set;
    for (auto& [key, points] : buckets) {
        std::stable_sort(points.begin(), points.end(),
                         [](const Point& a, const Point& b) { return a.date < b.date; });
        std::vector<Date> dates;
        std::vector<double> values;
        dates.reserve(points.size());
        values.reserve(points.size());
        for (const auto& p : points) {
            dates.push_back(p.date);
            values.push_back(p.value);
        }
        set.add(ObservationSeries(key.first, key.second, std::move(dates),
                                  std::move(values)));
    }

    // Quote sanity: the ask may never sit below the bid.
    for (const auto& id : set.entity_ids()) {
        const auto* bid = set.find(id, FieldKind::CdsBid);
        const auto* ask = set.find(id, FieldKind::CdsAsk);
        if (!bid || !ask) continue;
        std::size_t i = 0, j = 0;
        while (i < bid->size() && j < ask->size()) {
            if (bid->dates()[i] < ask->dates()[j]) {
                ++i;
            } else if (ask->dates()[j] < bid->dates()[i]) {
                ++j;
            } else {
                if (ask->values()[j] < bid->values()[i]) {
                    throw InvalidSeries(id + ": CDS ask below bid on " +
                                        bid->dates()[i].to_iso());
                }
                ++i;
                ++j;
            }
        }
    }
    return set;
}

std::vector<EntityRecord> load_entities_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty entities file '" + path + "'", 1, 1);
    }
    if (split_line(line) !=
        std::vector<std::string>{"entity_id", "name", "sector", "market_cap",
                                 "window_start", "window_end"}) {
        throw ParseError(
            "entities header must be entity_id,name,sector,market_cap,window_start,window_end",
            1, 1);
    }

    std::vector<EntityRecord> records;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != 6) {
            throw ParseError("expected 6 fields, got " + std::to_string(fields.size()),
                             row, 1);
        }
        EntityRecord rec;
        rec.entity_id = fields[0];
        rec.name = fields[1];
        rec.sector = fields[2];
        rec.market_cap = parse_double(fields[3], row, 4);
        rec.window_start = parse_date(fields[4], row, 5);
        rec.window_end = parse_date(fields[5], row, 6);
        try {
            rec.validate();
        } catch (const Error& e) {
            throw ParseError(e.what(), row, 1);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string format_double(double value) {
    char buf[32];
    // Shortest representation that round-trips; matches the JSON emitter.
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        double parsed = 0.0;
        std::from_chars(buf, buf + std::string_view(buf).size(), parsed);
        if (parsed == value) break;
    }
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write '" + tmp.string() + "'");
        }
        out << contents;
    }
    fs::rename(tmp, target);
}

void write_observations_csv(const std::string& path,
                            const std::vector<SimulatedEntity>& entities) {
    std::ostringstream out;
    out << "date,entity_id,field_kind,value\n";
    for (const auto& entity : entities) {
        for (const auto& series : entity.series) {
            for (std::size_t i = 0; i < series.size(); ++i) {
                out << series.dates()[i].to_iso() << ',' << series.entity_id() << ','
                    << to_string(*series.kind()) << ','
                    << format_double(series.values()[i]) << '\n';
            }
        }
    }
    write_file_atomic(path, out.str());
}

void write_entities_csv(const std::string& path,
                        const std::vector<EntityRecord>& records) {
    std::ostringstream out;
    out << "entity_id,name,sector,market_cap,window_start,window_end\n";
    for (const auto& rec : records) {
        out << rec.entity_id << ',' << rec.name << ',' << rec.sector << ','
            << format_double(rec.market_cap) << ',' << rec.window_start.to_iso()
            << ',' << rec.window_end.to_iso() << '\n';
    }
    write_file_atomic(path, out.str());
}

}  // namespace credlink
