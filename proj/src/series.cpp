#include "credlink/series.hpp"

#include <algorithm>

#include "credlink/errors.hpp"

namespace credlink {

std::string to_string(FieldKind kind) {
    switch (kind) {
        case FieldKind::SharePrice: return "SharePrice";
        case FieldKind::CdsBid: return "CdsBid";
        case FieldKind::CdsAsk: return "CdsAsk";
        case FieldKind::BondYield: return "BondYield";
        case FieldKind::SwapRate5y: return "SwapRate5y";
        case FieldKind::MarketCap: return "MarketCap";
    }
    return "?";
}

FieldKind field_kind_from_string(const std::string& text) {
    if (text == "SharePrice") return FieldKind::SharePrice;
    if (text == "CdsBid") return FieldKind::CdsBid;
    if (text == "CdsAsk") return FieldKind::CdsAsk;
    if (text == "BondYield") return FieldKind::BondYield;
    if (text == "SwapRate5y") return FieldKind::SwapRate5y;
    if (text == "MarketCap") return FieldKind::MarketCap;
    throw InvalidSeries("unknown field kind '" + text + "'");
}

ObservationSeries::ObservationSeries(std::string entity_id,
                                     std::optional<FieldKind> kind,
                                     std::vector<Date> dates,
                                     std::vector<double> values)
    : entity_id_(std::move(entity_id)),
      kind_(kind),
      dates_(std::move(dates)),
      values_(std::move(values)) {
    if (dates_.size() != values_.size()) {
        throw InvalidSeries(entity_id_ + ": dates and values differ in length");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i - 1] < dates_[i])) {
            throw InvalidSeries(entity_id_ + ": dates must be strictly increasing (" +
                                dates_[i].to_iso() + " follows " +
                                dates_[i - 1].to_iso() + ")");
        }
    }
    if (kind_ == FieldKind::SharePrice) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!(values_[i] > 0.0)) {
                throw NonPositivePrice(entity_id_ + ": share price " +
                                       std::to_string(values_[i]) + " on " +
                                       dates_[i].to_iso());
            }
        }
    }
}

void EntityRecord::validate() const {
    if (!(market_cap > 0.0)) {
        throw InvalidSeries(entity_id + ": market cap must be positive");
    }
    if (!(window_start < window_end)) {
        throw InvalidSeries(entity_id + ": observation window start must precede end");
    }
}

AlignedPanel::AlignedPanel(std::string entity_id, std::vector<Date> dates,
                           std::vector<std::string> columns, Matrix values)
    : entity_id_(std::move(entity_id)),
      dates_(std::move(dates)),
      columns_(std::move(columns)),
      values_(std::move(values)) {
    if (columns_.size() != static_cast<std::size_t>(values_.cols()) ||
        dates_.size() != static_cast<std::size_t>(values_.rows())) {
        throw InvalidSeries(entity_id_ + ": panel shape mismatch");
    }
    if (columns_.size() < 2 || columns_.size() > 3) {
        throw InvalidSeries(entity_id_ + ": panel must have 2 or 3 columns");
    }
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i - 1] < dates_[i])) {
            throw InvalidSeries(entity_id_ + ": panel dates must be strictly increasing");
        }
    }
    if (!values_.allFinite()) {
        throw InvalidSeries(entity_id_ + ": panel contains non-finite values");
    }
}

Eigen::Index AlignedPanel::column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) return -1;
    return static_cast<Eigen::Index>(it - columns_.begin());
}

AlignedPanel AlignedPanel::window(Date first, Date last) const {
    const auto lo = std::lower_bound(dates_.begin(), dates_.end(), first);
    const auto hi = std::upper_bound(dates_.begin(), dates_.end(), last);
    const auto start = static_cast<Eigen::Index>(lo - dates_.begin());
    const auto count = static_cast<Eigen::Index>(hi - lo);
    if (count < 2) {
        throw EmptyOverlap(entity_id_ + ": window [" + first.to_iso() + ", " +
                           last.to_iso() + "] leaves fewer than 2 rows");
    }
    return AlignedPanel(entity_id_, std::vector<Date>(lo, hi), columns_,
                        values_.middleRows(start, count));
}

}  // namespace credlink
