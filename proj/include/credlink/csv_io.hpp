#pragma once

#include <map>
#include <string>
#include <vector>

#include "credlink/series.hpp"
#include "credlink/simulator.hpp"

namespace credlink {

// Raw observations grouped by entity and field. Built from the ingestion CSV
// `date,entity_id,field_kind,value` (ISO dates, dot decimals, header row).
class MarketDataSet {
public:
    void add(ObservationSeries series);
    const ObservationSeries* find(const std::string& entity_id, FieldKind kind) const;
    std::vector<std::string> entity_ids() const;

private:
    std::map<std::string, std::map<FieldKind, ObservationSeries>> by_entity_;
};

MarketDataSet load_observations_csv(const std::string& path);

// `entity_id,name,sector,market_cap,window_start,window_end`
std::vector<EntityRecord> load_entities_csv(const std::string& path);

void write_observations_csv(const std::string& path,
                            const std::vector<SimulatedEntity>& entities);
void write_entities_csv(const std::string& path,
                        const std::vector<EntityRecord>& records);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

// Writes via a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace credlink
