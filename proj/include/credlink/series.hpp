#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credlink/dates.hpp"
#include "credlink/linalg.hpp"

namespace credlink {

// Raw market fields accepted by the ingestion format.
enum class FieldKind {
    SharePrice,
    CdsBid,
    CdsAsk,
    BondYield,
    SwapRate5y,
    MarketCap,
};

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& text);

// Date-indexed numeric series for one entity. Raw ingested series carry the
// market field they came from; transformed series (returns, mid spreads,
// differences) carry no field kind. Immutable after construction.
class ObservationSeries {
public:
    ObservationSeries(std::string entity_id, std::optional<FieldKind> kind,
                      std::vector<Date> dates, std::vector<double> values);

    const std::string& entity_id() const { return entity_id_; }
    std::optional<FieldKind> kind() const { return kind_; }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return dates_.size(); }

private:
    std::string entity_id_;
    std::optional<FieldKind> kind_;
    std::vector<Date> dates_;
    std::vector<double> values_;
};

// One row of the entity metadata file.
struct EntityRecord {
    std::string entity_id;
    std::string name;
    std::string sector;
    double market_cap = 0.0;
    Date window_start;
    Date window_end;

    void validate() const;
};

// T x k matrix of analysis variables on a common date grid. Column order is
// canonical: (RS, DBOND, DCDS) when bonds are present, (RS, DCDS) otherwise.
class AlignedPanel {
public:
    AlignedPanel(std::string entity_id, std::vector<Date> dates,
                 std::vector<std::string> columns, Matrix values);

    const std::string& entity_id() const { return entity_id_; }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<std::string>& columns() const { return columns_; }
    const Matrix& values() const { return values_; }

    Eigen::Index rows() const { return values_.rows(); }
    Eigen::Index cols() const { return values_.cols(); }
    Eigen::Index column_index(const std::string& name) const;  // -1 if absent

    // Rows whose date lies in [first, last].
    AlignedPanel window(Date first, Date last) const;

private:
    std::string entity_id_;
    std::vector<Date> dates_;
    std::vector<std::string> columns_;
    Matrix values_;
};

}  // namespace credlink
