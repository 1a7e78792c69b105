#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "reskit/events.hpp"

namespace reskit {

enum class Weight
{
    unit,
    customers,
};

struct Step
{
    Minutes time = 0;
    std::int64_t increment = 0;

    friend bool operator==(const Step&, const Step&) = default;
};

/// Nondecreasing, right-continuous counting function that starts at 0.
///
/// Stored as increments at strictly increasing times; same-time increments are
/// merged and zero increments dropped on construction, so two processes with
/// equal values everywhere compare equal.
class StepProcess
{
public:
    StepProcess() = default;
    /// Throws std::invalid_argument on a negative increment.
    explicit StepProcess(std::vector<Step> steps);

    const std::vector<Step>& steps() const noexcept { return steps_; }
    std::int64_t value_at(Minutes t) const;
    std::int64_t final_value() const noexcept;

    friend bool operator==(const StepProcess&, const StepProcess&) = default;

private:
    std::vector<Step> steps_;
};

struct Change
{
    Minutes time = 0;
    std::int64_t delta = 0;

    friend bool operator==(const Change&, const Change&) = default;
};

/// Piecewise-constant C(t) = R(t) - O(t), stored as signed changes at strictly
/// increasing times. Same-time changes are netted and zero nets dropped.
class ResilienceCurve
{
public:
    ResilienceCurve() = default;
    explicit ResilienceCurve(std::vector<Change> changes);

    const std::vector<Change>& changes() const noexcept { return changes_; }
    std::int64_t value_at(Minutes t) const;
    bool empty() const noexcept { return changes_.empty(); }

    /// True when C never goes positive and ends at 0.
    bool is_valid() const noexcept;

    friend bool operator==(const ResilienceCurve&, const ResilienceCurve&) = default;

private:
    std::vector<Change> changes_;
};

/// Customer-minutes lost and its split into the area above the restore curve
/// (restored) and above the outage curve (outaged) inside the n*c bounding
/// rectangle.
struct CustomerHoursBreakdown
{
    double area = 0;          // A, customer-minutes
    double restore_area = 0;  // A_R
    double outage_area = 0;   // A_O

    double customer_hours() const noexcept { return area / 60.0; }
};

StepProcess outage_process(const Event& e, Weight weight = Weight::unit);
StepProcess restore_process(const Event& e, Weight weight = Weight::unit);
ResilienceCurve resilience_curve(const Event& e, Weight weight = Weight::unit);

/// Subtract two processes, R - O.
ResilienceCurve difference(const StepProcess& restores, const StepProcess& outages);

/// Jordan decomposition of a curve into (outage, restore) processes.
/// Throws InvalidCurveError if the curve goes positive or does not return to 0.
std::pair<StepProcess, StepProcess> decompose(const ResilienceCurve& curve);

/// area is the exact integral of -C_cust over the curve's support;
/// restore_area and outage_area are the rectangle sums over time gaps.
/// The two routes agree exactly for integer-minute events.
CustomerHoursBreakdown customer_hours(const Event& e);

/// One row per change instant of the merged curve: (t, O(t), R(t), C(t)).
struct CurvePoint
{
    Minutes time;
    std::int64_t outages;
    std::int64_t restores;
    std::int64_t curve;
};
std::vector<CurvePoint> curve_table(const Event& e, Weight weight);

} // namespace reskit
