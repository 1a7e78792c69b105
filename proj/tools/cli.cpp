#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reskit/error.hpp"
#include "reskit/events.hpp"
#include "reskit/fitting.hpp"
#include "reskit/ingest.hpp"
#include "reskit/json_io.hpp"
#include "reskit/metrics.hpp"
#include "reskit/processes.hpp"
#include "reskit/simulation.hpp"
#include "reskit/statistics.hpp"

namespace reskit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << text;
}

// Write to the file if a path was given, else to stdout.
void emit(std::ostream& out, const std::string& path, const std::string& text)
{
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

struct IngestFlags
{
    std::string input;
    bool strict = false;
    IngestConfig config;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--input,-i", input, "Outage CSV")->required();
        cmd->add_flag("--strict", strict, "Abort on the first bad row");
        cmd->add_option("--start-col", config.outage_start_column, "Outage start column name");
        cmd->add_option("--restore-col", config.restore_time_column, "Restore time column name");
        cmd->add_option("--customers-col", config.customers_column, "Customers column name");
    }

    EventLog load()
    {
        config.strict = strict;
        try
        {
            return parse_records(read_file(input), config);
        }
        catch (const ParseError& e)
        {
            throw ParseError(e.line(), input + ": " + e.reason());
        }
    }
};

struct BundleFlags
{
    std::string bundle_path;
    bool reference = false;
    std::optional<std::size_t> max_n;
    bool allow_extrapolation = false;

    void add(CLI::App* cmd)
    {
        auto* b = cmd->add_option("--bundle", bundle_path, "Stats bundle JSON from `fit`");
        auto* r = cmd->add_flag("--reference", reference, "Use the built-in reference bundle (default)");
        b->excludes(r);
        cmd->add_option("--max-n", max_n, "Override the validated n range")->check(CLI::PositiveNumber);
        cmd->add_flag("--allow-extrapolation", allow_extrapolation, "Permit n beyond the validated range");
    }

    StatsBundle load() const
    {
        StatsBundle b = reference_bundle();
        if (!bundle_path.empty())
        {
            try
            {
                b = json::parse(read_file(bundle_path)).get<StatsBundle>();
            }
            catch (const json::exception& e)
            {
                throw Error(bundle_path + ": " + e.what());
            }
        }
        if (max_n)
            b.n_max_valid = *max_n;
        return b;
    }

    std::string source() const { return bundle_path.empty() ? "reference" : bundle_path; }
};

void event_summary_csv(const std::vector<Event>& events, std::ostringstream& csv)
{
    csv << "id,n,start,end,duration,customer_hours\n";
    for (const auto& e : events)
        csv << e.id << ',' << e.n() << ',' << num(e.start()) << ',' << num(e.end()) << ',' << num(e.duration()) << ','
            << num(customer_hours(e).customer_hours()) << '\n';
}

std::string pool_csv(const TimeDiffPool& pool, SdConvention conv)
{
    std::ostringstream csv;
    csv << "n,count,mean_min,sd_min\n";
    for (const auto& row : summarize(pool, conv))
        csv << row.n << ',' << row.stats.count << ',' << num(row.stats.mean) << ',' << num(row.stats.sd) << '\n';
    return csv.str();
}

json scalar_json(const ScalarPool& pool, SdConvention conv)
{
    if (pool.samples.empty())
        return nullptr;
    return json(moments(pool.samples, conv));
}

std::vector<PoolRow> read_pool_csv(const std::string& path)
{
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<PoolRow> rows;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> cols;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ','))
            fields.push_back(f);
        if (cols.empty())
        {
            for (std::size_t i = 0; i < fields.size(); ++i)
                cols[fields[i]] = i;
            for (const char* need : {"n", "count", "mean_min", "sd_min"})
                if (!cols.count(need))
                    throw ParseError(1, path + ": missing column '" + need + "'");
            continue;
        }
        try
        {
            PoolRow row;
            row.n = std::stoul(fields.at(cols["n"]));
            row.stats.count = std::stoul(fields.at(cols["count"]));
            row.stats.mean = std::stod(fields.at(cols["mean_min"]));
            row.stats.sd = std::stod(fields.at(cols["sd_min"]));
            rows.push_back(row);
        }
        catch (const std::exception&)
        {
            throw ParseError(line_no, path + ": malformed stats row");
        }
    }
    return rows;
}

json fit_json(const FitResult& r, bool weighted, std::size_t points)
{
    return json{{"model", r.model},
                {"rmse", r.rmse},
                {"weights_mode", weighted ? "counts" : "unweighted"},
                {"points_used", points}};
}

// Sd targets skip n with a single sample, whose sd is zero by convention.
std::vector<FitPoint> table_points(const std::vector<PoolRow>& rows, FitTarget target, bool weighted,
                                   std::size_t min_count)
{
    return fit_points(rows, target, weighted, std::max<std::size_t>(min_count, target == FitTarget::sd ? 2 : 1));
}

StatsBundle fit_bundle(const std::vector<PoolRow>& do_rows, const std::vector<PoolRow>& dr_rows,
                       const MomentStats& dr0, const MomentStats& customers, bool weighted, std::size_t min_count,
                       json& report)
{
    StatsBundle b;
    const auto one = [&](const char* key, const std::vector<PoolRow>& rows, FitTarget t, std::size_t terms) {
        const auto pts = table_points(rows, t, weighted, min_count);
        const auto r = fit_exp_model(pts, terms);
        report[key] = fit_json(r, weighted, pts.size());
        return r.model;
    };
    b.outage_diff_mean = one("model_do_mean", do_rows, FitTarget::mean, 2);
    b.outage_diff_sd = one("model_do_sd", do_rows, FitTarget::sd, 2);
    b.restore_diff_mean = one("model_dr_mean", dr_rows, FitTarget::mean, 2);
    b.restore_diff_sd = one("model_dr_sd", dr_rows, FitTarget::sd, 1);
    b.restore_delay = dr0;
    b.customers = customers;
    // A fitted bundle is only validated up to the largest n it saw.
    std::size_t seen = 2;
    for (const auto& r : dr_rows)
        seen = std::max(seen, r.n);
    b.n_max_valid = std::min(seen, b.n_max_valid);
    return b;
}

std::pair<std::size_t, std::size_t> parse_sweep(const std::string& s)
{
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw UsageError("--sweep expects lo:hi");
    std::size_t lo = 0, hi = 0;
    const auto a = std::from_chars(s.data(), s.data() + colon, lo);
    const auto b = std::from_chars(s.data() + colon + 1, s.data() + s.size(), hi);
    if (a.ec != std::errc{} || b.ec != std::errc{} || a.ptr != s.data() + colon || b.ptr != s.data() + s.size() ||
        lo < 1 || hi < lo)
        throw UsageError("--sweep expects lo:hi with 1 <= lo <= hi");
    return {lo, hi};
}

std::string sweep_csv(std::size_t lo, std::size_t hi, const StatsBundle& bundle, const PredictOptions& opts)
{
    std::ostringstream csv;
    csv << "n,dr_mean,dr_p95,lambda_o,lambda_r,A_mean\n";
    for (std::size_t n = lo; n <= hi; ++n)
    {
        const auto p = predict(n, bundle, opts);
        csv << n << ',' << num(p.dr_mean) << ',' << (p.dr_percentile ? num(*p.dr_percentile) : "") << ','
            << (p.rate_outage ? num(*p.rate_outage) : "") << ',' << (p.rate_restore ? num(*p.rate_restore) : "") << ','
            << num(p.customer_hours_mean) << '\n';
    }
    return csv.str();
}

json simulation_json(const SimConfig& cfg, const StatsBundle& bundle, const MonteCarloSummary& mc)
{
    const auto dr = restore_duration_stats(cfg.n, bundle, 1.0, {true});
    const auto de = event_duration_stats(cfg.n, bundle, {true});
    const auto a = mean_customer_hours(cfg.n, bundle, {true});
    const auto z = [](const EmpiricalMoment& m, double analytic) -> json {
        if (!m.standard_error || *m.standard_error == 0)
            return nullptr;
        return (m.mean - analytic) / *m.standard_error;
    };
    return json{
        {"config",
         {{"n", cfg.n},
          {"replicates", cfg.replicates},
          {"seed", cfg.seed},
          {"mode", cfg.mode == SimMode::unconstrained ? "unconstrained" : "physical"},
          {"family", cfg.marginal_family == MarginalFamily::gamma ? "gamma" : "lognormal"},
          {"customers", cfg.customer_family == CustomerFamily::gamma ? "gamma" : "constant"}}},
        {"empirical",
         {{"dr", mc.restore_duration}, {"de", mc.event_duration}, {"A", mc.customer_hours}}},
        {"analytic",
         {{"dr_mean", dr.mean}, {"dr_sd", dr.sd}, {"de_mean", de.mean}, {"de_sd", de.sd}, {"A_mean", a.mean}}},
        {"z_scores",
         {{"dr_mean", z(mc.restore_duration, dr.mean)},
          {"de_mean", z(mc.event_duration, de.mean)},
          {"A_mean", z(mc.customer_hours, a.mean)}}},
        {"standard_errors_defined", mc.standard_errors_defined()}};
}

const std::map<std::string, SimMode> kModes{{"unconstrained", SimMode::unconstrained}, {"physical", SimMode::physical}};
const std::map<std::string, MarginalFamily> kFamilies{{"gamma", MarginalFamily::gamma},
                                                      {"lognormal", MarginalFamily::lognormal}};
const std::map<std::string, CustomerFamily> kCustomerFamilies{{"gamma", CustomerFamily::gamma},
                                                              {"constant", CustomerFamily::constant}};
const std::map<std::string, Weight> kWeights{{"unit", Weight::unit}, {"customers", Weight::customers}};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Resilience event analytics for distribution outage records", "resilience-kit"};
    app.require_subcommand(1);

    // ingest
    auto* ingest_cmd = app.add_subcommand("ingest", "Parse and clean an outage CSV");
    IngestFlags ingest_flags;
    ingest_flags.add(ingest_cmd);
    std::string ingest_out, ingest_report;
    ingest_cmd->add_option("--out,-o", ingest_out, "Cleaned CSV output");
    ingest_cmd->add_option("--report", ingest_report, "Cleaning report JSON (default stdout)");

    // events
    auto* events_cmd = app.add_subcommand("events", "Extract resilience events");
    IngestFlags events_flags;
    events_flags.add(events_cmd);
    std::string events_out, events_summary;
    events_cmd->add_option("--out,-o", events_out, "Events JSON (default stdout)");
    events_cmd->add_option("--summary", events_summary, "Per-event summary CSV");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Emit O, R, C at every change instant");
    IngestFlags curve_flags;
    curve_flags.add(curve_cmd);
    std::string curve_weight = "unit", curve_out, curve_dir;
    std::optional<std::int64_t> curve_event;
    curve_cmd->add_option("--weight", curve_weight, "unit or customers")->check(CLI::IsMember({"unit", "customers"}));
    curve_cmd->add_option("--event", curve_event, "Only this event id");
    auto* co = curve_cmd->add_option("--out,-o", curve_out, "Single CSV with an event_id column");
    auto* cd = curve_cmd->add_option("--out-dir", curve_dir, "One event_<id>.csv per event");
    co->excludes(cd);

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Pool time differences and moments");
    IngestFlags stats_flags;
    stats_flags.add(stats_cmd);
    std::string stats_dir;
    bool population_sd = false;
    stats_cmd->add_option("--out-dir", stats_dir, "Write do_stats.csv, dr_stats.csv, scalars.json");
    stats_cmd->add_flag("--population-sd", population_sd, "Use the n denominator for standard deviations");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit constant-plus-exponential models");
    std::string fit_stats, fit_stats_dir, fit_target = "mean", fit_out;
    std::size_t fit_terms = 2, fit_min_count = 1;
    bool fit_reference = false, fit_unweighted = false;
    auto* fs1 = fit_cmd->add_option("--stats", fit_stats, "Stats CSV (n,count,mean_min,sd_min)");
    auto* fs2 = fit_cmd->add_option("--stats-dir", fit_stats_dir, "Directory written by `stats --out-dir`; emits a bundle");
    auto* fr = fit_cmd->add_flag("--reference", fit_reference, "Emit the built-in reference bundle");
    fs1->excludes(fs2)->excludes(fr);
    fs2->excludes(fr);
    fit_cmd->add_option("--target", fit_target, "mean or sd")->check(CLI::IsMember({"mean", "sd"}));
    fit_cmd->add_option("--terms", fit_terms, "Exponential terms")->check(CLI::Range(1, 2));
    fit_cmd->add_option("--min-count", fit_min_count, "Skip n with fewer samples");
    fit_cmd->add_flag("--unweighted", fit_unweighted, "Weight every n equally");
    fit_cmd->add_option("--out,-o", fit_out, "Output JSON (default stdout)");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Closed-form metrics at n");
    BundleFlags predict_bundle;
    predict_bundle.add(predict_cmd);
    std::optional<std::size_t> predict_n;
    std::string predict_sweep, predict_out;
    PredictOptions predict_opts;
    auto* pn = predict_cmd->add_option("--n", predict_n, "Number of outages")->check(CLI::PositiveNumber);
    auto* ps = predict_cmd->add_option("--sweep", predict_sweep, "lo:hi, emits CSV");
    pn->excludes(ps);
    predict_cmd->add_option("--percentile", predict_opts.percentile, "Restore-duration percentile")
        ->check(CLI::Range(0.0, 1.0));
    predict_cmd->add_option("--completion", predict_opts.completion, "Fraction of outages restored")
        ->check(CLI::Range(0.0, 1.0));
    predict_cmd->add_option("--out,-o", predict_out, "Output file (default stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of the closed forms");
    BundleFlags sim_bundle;
    sim_bundle.add(sim_cmd);
    SimConfig sim_cfg;
    std::string sim_mode = "unconstrained", sim_family = "gamma", sim_customers = "gamma", sim_csv, sim_out;
    sim_cmd->add_option("--n", sim_cfg.n, "Number of outages")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--replicates", sim_cfg.replicates, "Replicates")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim_cfg.seed, "RNG seed");
    sim_cmd->add_option("--mode", sim_mode, "unconstrained or physical")->check(CLI::IsMember({"unconstrained", "physical"}));
    sim_cmd->add_option("--family", sim_family, "gamma or lognormal gaps")->check(CLI::IsMember({"gamma", "lognormal"}));
    sim_cmd->add_option("--customers", sim_customers, "gamma or constant")->check(CLI::IsMember({"gamma", "constant"}));
    sim_cmd->add_option("--per-replicate-csv", sim_csv, "Write (D_R, D_E, A) per replicate");
    sim_cmd->add_option("--out,-o", sim_out, "Output JSON (default stdout)");

    // report
    auto* report_cmd = app.add_subcommand("report", "Run the whole pipeline into one JSON document");
    IngestFlags report_flags;
    report_flags.add(report_cmd);
    std::string report_out, report_figures;
    std::uint64_t report_seed = 42;
    std::size_t report_replicates = 2000;
    report_cmd->add_option("--out,-o", report_out, "Report JSON (default stdout)");
    report_cmd->add_option("--figures-dir", report_figures, "Plot-ready CSVs");
    report_cmd->add_option("--seed", report_seed, "Simulation seed");
    report_cmd->add_option("--replicates", report_replicates, "Simulation replicates")->check(CLI::PositiveNumber);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        for (auto* sub : app.get_subcommands())
            err << sub->help();
        if (app.get_subcommands().empty())
            err << app.help();
        return 2;
    }

    try
    {
        if (ingest_cmd->parsed())
        {
            const auto log = ingest_flags.load();
            if (!ingest_out.empty())
                write_file(ingest_out, to_csv(log, ingest_flags.config));
            emit(out, ingest_report, dump(json(log.report())));
        }
        else if (events_cmd->parsed())
        {
            const auto events = extract_events(events_flags.load());
            json arr = json::array();
            for (const auto& e : events)
                arr.push_back(event_json(e));
            emit(out, events_out, dump(arr));
            if (!events_summary.empty())
            {
                std::ostringstream csv;
                event_summary_csv(events, csv);
                write_file(events_summary, csv.str());
            }
        }
        else if (curve_cmd->parsed())
        {
            const auto weight = kWeights.at(curve_weight);
            const auto events = extract_events(curve_flags.load());
            std::ostringstream all;
            all << "event_id,time_min,O,R,C\n";
            bool found = !curve_event;
            for (const auto& e : events)
            {
                if (curve_event && e.id != *curve_event)
                    continue;
                found = true;
                std::ostringstream one;
                one << "time_min,O,R,C\n";
                for (const auto& p : curve_table(e, weight))
                {
                    all << e.id << ',' << num(p.time) << ',' << p.outages << ',' << p.restores << ',' << p.curve << '\n';
                    one << num(p.time) << ',' << p.outages << ',' << p.restores << ',' << p.curve << '\n';
                }
                if (!curve_dir.empty())
                    write_file(fs::path(curve_dir) / ("event_" + std::to_string(e.id) + ".csv"), one.str());
            }
            if (!found)
                throw Error("no event with id " + std::to_string(*curve_event));
            if (curve_dir.empty())
                emit(out, curve_out, all.str());
        }
        else if (stats_cmd->parsed())
        {
            const auto conv = population_sd ? SdConvention::population : SdConvention::sample;
            const auto events = extract_events(stats_flags.load());
            const auto do_pool = pool_time_differences(events, DiffKind::outage);
            const auto dr_pool = pool_time_differences(events, DiffKind::restore);
            json scalars{{"dr0", scalar_json(pool_restore_delay(events), conv)},
                         {"customers", scalar_json(pool_customers(events), conv)},
                         {"events", events.size()},
                         {"sd_convention", population_sd ? "population" : "sample"}};
            if (stats_dir.empty())
            {
                out << "# do_stats\n" << pool_csv(do_pool, conv) << "# dr_stats\n" << pool_csv(dr_pool, conv)
                    << "# scalars\n" << dump(scalars);
            }
            else
            {
                write_file(fs::path(stats_dir) / "do_stats.csv", pool_csv(do_pool, conv));
                write_file(fs::path(stats_dir) / "dr_stats.csv", pool_csv(dr_pool, conv));
                write_file(fs::path(stats_dir) / "scalars.json", dump(scalars));
            }
        }
        else if (fit_cmd->parsed())
        {
            const bool weighted = !fit_unweighted;
            if (fit_reference)
                emit(out, fit_out, dump(json(reference_bundle())));
            else if (!fit_stats.empty())
            {
                const auto rows = read_pool_csv(fit_stats);
                const auto target = fit_target == "mean" ? FitTarget::mean : FitTarget::sd;
                const auto pts = fit_points(rows, target, weighted, fit_min_count);
                emit(out, fit_out, dump(fit_json(fit_exp_model(pts, fit_terms), weighted, pts.size())));
            }
            else if (!fit_stats_dir.empty())
            {
                const fs::path dir(fit_stats_dir);
                const auto scalars = json::parse(read_file((dir / "scalars.json").string()));
                if (scalars.at("dr0").is_null() || scalars.at("customers").is_null())
                    throw Error("scalars.json lacks restore-delay or customer moments");
                json fits;
                auto bundle = fit_bundle(read_pool_csv((dir / "do_stats.csv").string()),
                                         read_pool_csv((dir / "dr_stats.csv").string()),
                                         scalars.at("dr0").get<MomentStats>(), scalars.at("customers").get<MomentStats>(),
                                         weighted, fit_min_count, fits);
                json j = bundle;
                j["fits"] = fits;
                emit(out, fit_out, dump(j));
            }
            else
                throw UsageError("fit needs one of --stats, --stats-dir, --reference");
        }
        else if (predict_cmd->parsed())
        {
            const auto bundle = predict_bundle.load();
            predict_opts.range.allow_extrapolation = predict_bundle.allow_extrapolation;
            if (!(predict_opts.percentile > 0 && predict_opts.percentile < 1))
                throw UsageError("--percentile must be strictly between 0 and 1");
            if (!(predict_opts.completion > 0))
                throw UsageError("--completion must be in (0, 1]");
            if (!predict_sweep.empty())
            {
                const auto [lo, hi] = parse_sweep(predict_sweep);
                emit(out, predict_out, sweep_csv(lo, hi, bundle, predict_opts));
            }
            else
            {
                if (!predict_n)
                    throw UsageError("predict needs --n or --sweep");
                json j = predict(*predict_n, bundle, predict_opts);
                j["provenance"] = {{"bundle", predict_bundle.source()},
                                   {"bundle_hash", bundle_hash(bundle)},
                                   {"n_max_valid", bundle.n_max_valid}};
                emit(out, predict_out, dump(j));
            }
        }
        else if (sim_cmd->parsed())
        {
            const auto bundle = sim_bundle.load();
            sim_cfg.mode = kModes.at(sim_mode);
            sim_cfg.marginal_family = kFamilies.at(sim_family);
            sim_cfg.customer_family = kCustomerFamilies.at(sim_customers);
            if (sim_cfg.n > bundle.n_max_valid && !sim_bundle.allow_extrapolation)
                throw OutOfRangeError("n=" + std::to_string(sim_cfg.n) + " is outside the validated range [1, " +
                                      std::to_string(bundle.n_max_valid) + "]");
            const auto mc = monte_carlo_metrics(sim_cfg, bundle, !sim_csv.empty());
            auto j = simulation_json(sim_cfg, bundle, mc);
            j["provenance"] = {{"bundle", sim_bundle.source()}, {"bundle_hash", bundle_hash(bundle)}};
            emit(out, sim_out, dump(j));
            if (!sim_csv.empty())
            {
                std::ostringstream csv;
                csv << "replicate,D_R,D_E,A\n";
                for (std::size_t i = 0; i < mc.per_replicate.size(); ++i)
                {
                    const auto& r = mc.per_replicate[i];
                    csv << i << ',' << num(r.restore_duration) << ',' << num(r.event_duration) << ','
                        << num(r.customer_hours) << '\n';
                }
                write_file(sim_csv, csv.str());
            }
        }
        else if (report_cmd->parsed())
        {
            const auto log = report_flags.load();
            const auto events = extract_events(log);
            const auto do_pool = pool_time_differences(events, DiffKind::outage);
            const auto dr_pool = pool_time_differences(events, DiffKind::restore);
            const auto do_rows = summarize(do_pool);
            const auto dr_rows = summarize(dr_pool);
            const auto dr0 = pool_restore_delay(events);
            const auto cust = pool_customers(events);

            json doc;
            doc["input"] = report_flags.input;
            doc["cleaning"] = log.report();
            std::size_t max_n = 0;
            double total_hours = 0;
            for (const auto& e : events)
            {
                max_n = std::max(max_n, e.n());
                total_hours += customer_hours(e).customer_hours();
            }
            doc["events"] = {{"count", events.size()}, {"max_n", max_n}, {"customer_hours_total", total_hours}};
            doc["statistics"] = {{"dr0", scalar_json(dr0, SdConvention::sample)},
                                 {"customers", scalar_json(cust, SdConvention::sample)},
                                 {"do_samples", do_pool.total_samples()},
                                 {"dr_samples", dr_pool.total_samples()}};

            StatsBundle bundle = reference_bundle();
            std::string bundle_source = "reference";
            json fits;
            try
            {
                if (dr0.samples.empty() || cust.samples.empty())
                    throw UnderdeterminedFitError("no events with two or more outages");
                bundle = fit_bundle(do_rows, dr_rows, moments(dr0.samples), moments(cust.samples), true, 1, fits);
                bundle_source = "fitted";
            }
            catch (const Error& e)
            {
                fits = {{"error", e.what()}};
            }
            doc["fit"] = fits;
            doc["bundle_source"] = bundle_source;
            doc["bundle"] = bundle;
            doc["bundle_hash"] = bundle_hash(bundle);

            PredictOptions opts;
            opts.range.allow_extrapolation = true;
            json preds = json::array();
            for (const std::size_t n : {2u, 5u, 10u, 50u, 100u, 250u})
                preds.push_back(predict(n, bundle, opts));
            doc["predictions"] = preds;

            json sims = json::array();
            for (const std::size_t n : {10u, 50u})
            {
                SimConfig cfg;
                cfg.n = n;
                cfg.replicates = report_replicates;
                cfg.seed = report_seed;
                sims.push_back(simulation_json(cfg, bundle, monte_carlo_metrics(cfg, bundle)));
            }
            doc["simulation"] = sims;

            if (!report_figures.empty())
            {
                const fs::path dir(report_figures);
                std::ostringstream summary;
                event_summary_csv(events, summary);
                write_file(dir / "events_summary.csv", summary.str());
                write_file(dir / "do_stats.csv", pool_csv(do_pool, SdConvention::sample));
                write_file(dir / "dr_stats.csv", pool_csv(dr_pool, SdConvention::sample));
                write_file(dir / "sweep.csv", sweep_csv(2, bundle.n_max_valid, bundle, opts));
                std::ostringstream curves;
                curves << "event_id,weight,time_min,O,R,C\n";
                for (const auto& e : events)
                    for (const auto& [name, w] : kWeights)
                        for (const auto& p : curve_table(e, w))
                            curves << e.id << ',' << name << ',' << num(p.time) << ',' << p.outages << ','
                                   << p.restores << ',' << p.curve << '\n';
                write_file(dir / "curves.csv", curves.str());
            }
            emit(out, report_out, dump(doc));
        }
        return 0;
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument& e)
    {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const json::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const fs::filesystem_error& e)
    {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace reskit::cli
