#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "reskit/error.hpp"
#include "reskit/events.hpp"
#include "reskit/fitting.hpp"
#include "reskit/gamma.hpp"
#include "reskit/ingest.hpp"
#include "reskit/json_io.hpp"
#include "reskit/metrics.hpp"
#include "reskit/processes.hpp"
#include "reskit/simulation.hpp"
#include "reskit/statistics.hpp"

namespace py = pybind11;
using namespace reskit;

namespace {

py::dict moment_dict(const EmpiricalMoment& m)
{
    py::dict d;
    d["mean"] = m.mean;
    d["sd"] = m.sd;
    d["se"] = m.standard_error ? py::cast(*m.standard_error) : py::none();
    return d;
}

py::dict duration_dict(const DurationStats& s)
{
    py::dict d;
    d["mean"] = s.mean;
    d["sd"] = s.sd;
    d["extrapolated"] = s.extrapolated;
    return d;
}

py::list steps_list(const StepProcess& p)
{
    py::list out;
    for (const auto& s : p.steps())
        out.append(py::make_tuple(s.time, s.increment));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Resilience event analytics core";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<OutOfRangeError>(m, "OutOfRangeError", base.ptr());

    py::enum_<Weight>(m, "Weight").value("unit", Weight::unit).value("customers", Weight::customers);
    py::enum_<DiffKind>(m, "DiffKind").value("outage", DiffKind::outage).value("restore", DiffKind::restore);
    py::enum_<SdConvention>(m, "SdConvention")
        .value("sample", SdConvention::sample)
        .value("population", SdConvention::population);
    py::enum_<SimMode>(m, "SimMode").value("unconstrained", SimMode::unconstrained).value("physical", SimMode::physical);
    py::enum_<MarginalFamily>(m, "MarginalFamily")
        .value("gamma", MarginalFamily::gamma)
        .value("lognormal", MarginalFamily::lognormal);
    py::enum_<CustomerFamily>(m, "CustomerFamily")
        .value("gamma", CustomerFamily::gamma)
        .value("constant", CustomerFamily::constant);

    // ingest
    py::class_<IngestConfig>(m, "IngestConfig")
        .def(py::init<>())
        .def_readwrite("outage_start_column", &IngestConfig::outage_start_column)
        .def_readwrite("restore_time_column", &IngestConfig::restore_time_column)
        .def_readwrite("customers_column", &IngestConfig::customers_column)
        .def_readwrite("strict", &IngestConfig::strict);

    py::class_<EventLog>(m, "EventLog")
        .def_property_readonly("records",
                               [](const EventLog& log) {
                                   py::list out;
                                   for (const auto& r : log.records())
                                       out.append(py::make_tuple(format_timestamp(r.outage_start),
                                                                 format_timestamp(r.restore_time), r.customers_out));
                                   return out;
                               })
        .def_property_readonly("report", [](const EventLog& log) { return nlohmann::json(log.report()).dump(); })
        .def_property_readonly("source_meta", &EventLog::source_meta)
        .def("__len__", &EventLog::size)
        .def("__eq__", [](const EventLog& a, const EventLog& b) { return a == b; });

    m.def("parse_records", &parse_records, py::arg("csv_text"), py::arg("config") = IngestConfig{});
    m.def("to_csv", &to_csv, py::arg("log"), py::arg("config") = IngestConfig{});

    // events
    py::class_<Event>(m, "Event")
        .def(py::init<>())
        .def_readwrite("id", &Event::id)
        .def_readwrite("outage_times", &Event::outage_times)
        .def_readwrite("restore_times", &Event::restore_times)
        .def_readwrite("customers_out", &Event::customers_out)
        .def_readwrite("customers_restored", &Event::customers_restored)
        .def_property_readonly("n", &Event::n)
        .def_property_readonly("duration", &Event::duration)
        .def_property_readonly("restore_duration", &Event::restore_duration)
        .def("__eq__", [](const Event& a, const Event& b) { return a == b; });

    m.def("extract_events", py::overload_cast<const EventLog&>(&extract_events), py::arg("log"));
    m.def(
        "extract_events_from_intervals",
        [](const std::vector<std::tuple<double, double, std::int64_t>>& rows) {
            std::vector<Interval> iv;
            for (const auto& [s, e, c] : rows)
                iv.push_back({s, e, c});
            return extract_events(iv);
        },
        py::arg("intervals"), "Events from (start_min, end_min, customers) tuples.");
    m.def("overlap_fraction", &overlap_fraction);

    // processes
    m.def("outage_process", [](const Event& e, Weight w) { return steps_list(outage_process(e, w)); },
          py::arg("event"), py::arg("weight") = Weight::unit);
    m.def("restore_process", [](const Event& e, Weight w) { return steps_list(restore_process(e, w)); },
          py::arg("event"), py::arg("weight") = Weight::unit);
    m.def(
        "resilience_curve",
        [](const Event& e, Weight w) {
            py::list out;
            const auto curve = resilience_curve(e, w);
            for (const auto& c : curve.changes())
                out.append(py::make_tuple(c.time, c.delta));
            return out;
        },
        py::arg("event"), py::arg("weight") = Weight::unit);
    m.def(
        "decompose",
        [](const std::vector<std::pair<double, std::int64_t>>& changes) {
            std::vector<Change> cs;
            for (const auto& [t, d] : changes)
                cs.push_back({t, d});
            const auto [o, r] = decompose(ResilienceCurve(std::move(cs)));
            return py::make_tuple(steps_list(o), steps_list(r));
        },
        py::arg("changes"), "Split (time, delta) changes into outage and restore step lists.");
    m.def("customer_hours", [](const Event& e) { return customer_hours(e).customer_hours(); });
    m.def(
        "curve_table",
        [](const Event& e, Weight w) {
            py::list out;
            for (const auto& p : curve_table(e, w))
                out.append(py::make_tuple(p.time, p.outages, p.restores, p.curve));
            return out;
        },
        py::arg("event"), py::arg("weight") = Weight::unit);

    // statistics
    py::class_<MomentStats>(m, "MomentStats")
        .def(py::init<>())
        .def_readwrite("mean", &MomentStats::mean)
        .def_readwrite("sd", &MomentStats::sd)
        .def_readwrite("count", &MomentStats::count);

    m.def("pool_time_differences",
          [](const std::vector<Event>& events, DiffKind kind) { return pool_time_differences(events, kind).samples_by_n; });
    m.def("pool_restore_delay", [](const std::vector<Event>& events) { return pool_restore_delay(events).samples; });
    m.def("pool_customers", [](const std::vector<Event>& events) { return pool_customers(events).samples; });
    m.def("moments", [](const std::vector<double>& x, SdConvention c) { return moments(x, c); }, py::arg("samples"),
          py::arg("convention") = SdConvention::sample);
    m.def(
        "summarize",
        [](const std::vector<Event>& events, DiffKind kind, SdConvention c) {
            py::list out;
            for (const auto& row : summarize(pool_time_differences(events, kind), c))
                out.append(py::make_tuple(row.n, row.stats.count, row.stats.mean, row.stats.sd));
            return out;
        },
        py::arg("events"), py::arg("kind"), py::arg("convention") = SdConvention::sample,
        "(n, count, mean, sd) rows of pooled time differences.");

    // fitting
    py::class_<ExpFitModel>(m, "ExpFitModel")
        .def(py::init([](double c, const std::vector<std::pair<double, double>>& terms) {
                 ExpFitModel model;
                 model.constant = c;
                 for (const auto& [a, b] : terms)
                     model.terms.push_back({a, b});
                 return model;
             }),
             py::arg("c"), py::arg("terms"))
        .def_readonly("constant", &ExpFitModel::constant)
        .def_property_readonly("terms",
                               [](const ExpFitModel& model) {
                                   py::list out;
                                   for (const auto& t : model.terms)
                                       out.append(py::make_tuple(t.amplitude, t.decay));
                                   return out;
                               })
        .def("__call__", [](const ExpFitModel& model, double n) { return model(n); });

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("model", &FitResult::model)
        .def_readonly("rmse", &FitResult::rmse)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged);

    m.def(
        "fit_exp_model",
        [](const std::vector<double>& n, const std::vector<double>& y, std::size_t terms,
           std::optional<std::vector<double>> weights) {
            if (n.size() != y.size() || (weights && weights->size() != n.size()))
                throw std::invalid_argument("n, y and weights must have equal length");
            std::vector<FitPoint> pts;
            for (std::size_t i = 0; i < n.size(); ++i)
                pts.push_back({n[i], y[i], weights ? (*weights)[i] : 1.0});
            py::gil_scoped_release release;
            return fit_exp_model(pts, terms);
        },
        py::arg("n"), py::arg("y"), py::arg("terms") = 2, py::arg("weights") = py::none());

    py::class_<StatsBundle>(m, "StatsBundle")
        .def_readwrite("outage_diff_mean", &StatsBundle::outage_diff_mean)
        .def_readwrite("outage_diff_sd", &StatsBundle::outage_diff_sd)
        .def_readwrite("restore_diff_mean", &StatsBundle::restore_diff_mean)
        .def_readwrite("restore_diff_sd", &StatsBundle::restore_diff_sd)
        .def_readwrite("restore_delay", &StatsBundle::restore_delay)
        .def_readwrite("customers", &StatsBundle::customers)
        .def_readwrite("n_max_valid", &StatsBundle::n_max_valid);

    m.def("reference_bundle", &reference_bundle);
    m.def("bundle_to_json", [](const StatsBundle& b) { return nlohmann::json(b).dump(); });
    m.def("bundle_from_json", [](const std::string& text) {
        try
        {
            return nlohmann::json::parse(text).get<StatsBundle>();
        }
        catch (const nlohmann::json::exception& e)
        {
            throw Error(e.what());
        }
    });
    m.def("bundle_hash", &bundle_hash);

    // metrics
    m.def("gamma_quantile", [](double shape, double rate, double p) { return gamma_quantile({shape, rate}, p); },
          py::arg("shape"), py::arg("rate"), py::arg("p"));
    m.def(
        "restore_duration_stats",
        [](std::size_t n, const StatsBundle& b, double q, bool extrapolate) {
            return duration_dict(restore_duration_stats(n, b, q, {extrapolate}));
        },
        py::arg("n"), py::arg("bundle"), py::arg("completion") = 1.0, py::arg("allow_extrapolation") = false);
    m.def(
        "event_duration_stats",
        [](std::size_t n, const StatsBundle& b, bool extrapolate) {
            return duration_dict(event_duration_stats(n, b, {extrapolate}));
        },
        py::arg("n"), py::arg("bundle"), py::arg("allow_extrapolation") = false);
    m.def(
        "rates",
        [](std::size_t n, const StatsBundle& b, bool extrapolate) {
            const auto r = rates(n, b, {extrapolate});
            return py::make_tuple(r.outage, r.restore);
        },
        py::arg("n"), py::arg("bundle"), py::arg("allow_extrapolation") = false);
    m.def(
        "mean_customer_hours",
        [](std::size_t n, const StatsBundle& b, bool extrapolate) {
            const auto h = mean_customer_hours(n, b, {extrapolate});
            return py::make_tuple(h.mean, h.alternative);
        },
        py::arg("n"), py::arg("bundle"), py::arg("allow_extrapolation") = false);
    m.def(
        "restore_duration_percentile",
        [](std::size_t n, const StatsBundle& b, double p, bool extrapolate) {
            return restore_duration_percentile(n, b, p, {extrapolate});
        },
        py::arg("n"), py::arg("bundle"), py::arg("p") = 0.95, py::arg("allow_extrapolation") = false);

    py::class_<MetricsPrediction>(m, "MetricsPrediction")
        .def_readonly("n", &MetricsPrediction::n)
        .def_readonly("dr_mean", &MetricsPrediction::dr_mean)
        .def_readonly("dr_sd", &MetricsPrediction::dr_sd)
        .def_readonly("de_mean", &MetricsPrediction::de_mean)
        .def_readonly("de_sd", &MetricsPrediction::de_sd)
        .def_readonly("rate_outage", &MetricsPrediction::rate_outage)
        .def_readonly("rate_restore", &MetricsPrediction::rate_restore)
        .def_readonly("customer_hours_mean", &MetricsPrediction::customer_hours_mean)
        .def_readonly("dr_percentile", &MetricsPrediction::dr_percentile)
        .def_readonly("extrapolated", &MetricsPrediction::extrapolated)
        .def_readonly("warning", &MetricsPrediction::warning)
        .def("to_json", [](const MetricsPrediction& p) { return nlohmann::json(p).dump(); });

    m.def(
        "predict",
        [](std::size_t n, const StatsBundle& b, double percentile, double completion, bool extrapolate) {
            PredictOptions opts;
            opts.percentile = percentile;
            opts.completion = completion;
            opts.range.allow_extrapolation = extrapolate;
            return predict(n, b, opts);
        },
        py::arg("n"), py::arg("bundle"), py::arg("percentile") = 0.95, py::arg("completion") = 1.0,
        py::arg("allow_extrapolation") = false);

    // simulation
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("n", &SimConfig::n)
        .def_readwrite("replicates", &SimConfig::replicates)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("mode", &SimConfig::mode)
        .def_readwrite("marginal_family", &SimConfig::marginal_family)
        .def_readwrite("customer_family", &SimConfig::customer_family)
        .def_readwrite("threads", &SimConfig::threads);

    m.def("simulate_event", &simulate_event, py::arg("config"), py::arg("bundle"), py::arg("replicate_index") = 0);
    m.def(
        "monte_carlo_metrics",
        [](const SimConfig& cfg, const StatsBundle& b) {
            MonteCarloSummary s;
            {
                py::gil_scoped_release release;
                s = monte_carlo_metrics(cfg, b);
            }
            py::dict d;
            d["replicates"] = s.replicates;
            d["dr"] = moment_dict(s.restore_duration);
            d["de"] = moment_dict(s.event_duration);
            d["A"] = moment_dict(s.customer_hours);
            return d;
        },
        py::arg("config"), py::arg("bundle"));
}
