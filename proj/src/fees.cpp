#include "quantbench/fees.hpp"

#include "quantbench/errors.hpp"

#include <algorithm>
#include <cmath>

namespace quantbench {

FeeLedger apply_fees(const NavSeries& gross, const FeeSchedule& schedule, HwmBasis basis) {
    if (schedule.mgmt_rate < 0.0 || schedule.mgmt_rate >= 1.0) {
        throw InputError("management rate must be in [0, 1)");
    }
    if (schedule.perf_rate < 0.0 || schedule.perf_rate >= 1.0) {
        throw InputError("performance rate must be in [0, 1)");
    }
    if (schedule.periods_per_year <= 0) {
        throw InputError("periods per year must be positive");
    }

    const double daily_mgmt = schedule.mgmt_rate / static_cast<double>(schedule.periods_per_year);

    std::vector<double> mgmt_fees, perf_fees, marks, net_navs;
    mgmt_fees.reserve(gross.size());
    perf_fees.reserve(gross.size());
    marks.reserve(gross.size());
    net_navs.reserve(gross.size());
    double total_mgmt = 0.0, total_perf = 0.0;

    if (schedule.mgmt_rate == 0.0 && schedule.perf_rate == 0.0) {
        // No fees: the net path is the gross path, exactly.
        mgmt_fees.assign(gross.size(), 0.0);
        perf_fees.assign(gross.size(), 0.0);
        double hwm = gross.initial_capital();
        for (double g : gross.values()) {
            hwm = std::max(hwm, g);
            marks.push_back(hwm);
        }
        return FeeLedger{gross.calendar(),
                         std::move(mgmt_fees),
                         std::move(perf_fees),
                         std::move(marks),
                         NavSeries(gross.name(), gross.initial_capital(), gross.calendar(),
                                   gross.values()),
                         0.0,
                         0.0};
    }

    double net = gross.initial_capital();
    double hwm = gross.initial_capital();
    double prev_gross = gross.initial_capital();
    for (double g : gross.values()) {
        const double grown = net * (g / prev_gross);
        prev_gross = g;

        const double mgmt_fee = grown * daily_mgmt;
        const double after_mgmt = grown - mgmt_fee;

        double perf_fee = 0.0;
        if (schedule.perf_rate > 0.0 && after_mgmt > hwm) {
            perf_fee = schedule.perf_rate * (after_mgmt - hwm);
            net = after_mgmt - perf_fee;
            hwm = basis == HwmBasis::pre_perf_fee ? after_mgmt : net;
        } else {
            net = after_mgmt;
            if (schedule.perf_rate == 0.0) hwm = std::max(hwm, after_mgmt);
        }
        if (!(net > 0.0)) throw DegeneracyError("fees exhausted NAV"); // unreachable for rates < 1

        mgmt_fees.push_back(mgmt_fee);
        perf_fees.push_back(perf_fee);
        marks.push_back(hwm);
        total_mgmt += mgmt_fee;
        total_perf += perf_fee;
        net_navs.push_back(net);
    }

    return FeeLedger{gross.calendar(),
                     std::move(mgmt_fees),
                     std::move(perf_fees),
                     std::move(marks),
                     NavSeries(gross.name(), gross.initial_capital(), gross.calendar(),
                               std::move(net_navs)),
                     total_mgmt,
                     total_perf};
}

} // namespace quantbench
