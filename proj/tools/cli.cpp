#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "io.hpp"
#include "normclust/ballhull.hpp"
#include "normclust/clustering.hpp"
#include "normclust/geometry.hpp"
#include "normclust/instances.hpp"
#include "normclust/separation.hpp"
#include "svg.hpp"

namespace normclust::cli {

namespace {

using io::Json;

struct Options {
    std::string norm = "euclidean";
    std::string points;
    std::uint64_t seed = 1;
    double tol = kDefaultTolerance;
    bool json = false;
    bool timing = false;
    bool verify = false;

    std::string a, b;
    double d1 = 0, d2 = 0;
    std::optional<double> d;
    int k = 2;
    std::string objective = "max";
    std::string measure = "diameter";
    std::string query;
    std::vector<std::size_t> deletes;
    std::string out;
    std::string scene = "points";
};

// Thrown when the problem has no solution; exit code 1.
struct Infeasible {
    Json detail;
};

Json partition_json(const Partition& p) {
    Json clusters = Json::array(), measures = Json::array();
    for (const auto& c : p.clusters) clusters.push_back(c);
    for (double m : p.measures) measures.push_back(m);
    return {{"clusters", clusters}, {"measures", measures}};
}

Json points_json(const PointSet& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(io::point_json(p));
    return arr;
}

Json line_json(const OrientedLine& l) {
    return {{"anchor", io::point_json(l.anchor)}, {"direction", io::point_json(l.direction)}};
}

bool covers(const Partition& p, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const auto& c : p.clusters)
        for (auto i : c) {
            if (i >= n) return false;
            ++seen[i];
        }
    return std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; });
}

bool same_measures(const NormedPlane& plane, const PointSet& s, Partition p, Measure m) {
    const auto claimed = p.measures;
    measure_partition(plane, s, p, m);
    for (std::size_t i = 0; i < claimed.size(); ++i)
        if (std::abs(claimed[i] - p.measures[i]) > 1e-9 * std::max(1.0, claimed[i])) return false;
    return true;
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out), plane_(io::parse_norm(o.norm, o.tol)) {}

    // Fills result; returns whether --verify checks passed.
    bool dispatch(const std::string& cmd, Json& params, Json& result) {
        if (cmd == "diameter") return diameter_cmd(result);
        if (cmd == "separate") return separate_cmd(params, result);
        if (cmd == "cluster2") return cluster2_cmd(result);
        if (cmd == "cluster2c") return cluster2c_cmd(params, result);
        if (cmd == "cluster3") return cluster3_cmd(params, result);
        if (cmd == "clusterk") return clusterk_cmd(params, result);
        if (cmd == "ballhull") return ballhull_cmd(params, result);
        if (cmd == "mineball") return mineball_cmd(result);
        if (cmd == "plot") return plot_cmd(params, result);
        throw Error(ErrorCode::InvalidInput, "unknown command " + cmd);
    }

    const NormedPlane& plane() const { return plane_; }

private:
    const PointSet& points() {
        if (!pts_) {
            if (o_.points.empty()) throw Error(ErrorCode::InvalidInput, "--points is required");
            pts_ = io::read_points(o_.points);
        }
        return *pts_;
    }

    bool diameter_cmd(Json& result) {
        const auto& s = points();
        const auto r = diameter(plane_, s);
        result["value"] = r.value;
        result["pair"] = points_json({r.pair.first, r.pair.second});
        return r.value == diameter_bruteforce(plane_, s);
    }

    bool separate_cmd(Json& params, Json& result) {
        if (o_.a.empty() || o_.b.empty()) throw Error(ErrorCode::InvalidInput, "--a and --b are required");
        params["a"] = o_.a;
        params["b"] = o_.b;
        const PointSet a = io::read_points(o_.a), b = io::read_points(o_.b);
        const auto r = separate_clusters(plane_, a, b);
        const auto [before, after] = perimeter_check(plane_, a, b, r);
        const double da = diameter_bruteforce(plane_, a), db = diameter_bruteforce(plane_, b);
        const double dap = r.a_prime.empty() ? 0.0 : diameter_bruteforce(plane_, r.a_prime);
        const double dbp = r.b_prime.empty() ? 0.0 : diameter_bruteforce(plane_, r.b_prime);

        PointSet u1 = a, u2 = r.a_prime;
        u1.insert(u1.end(), b.begin(), b.end());
        u2.insert(u2.end(), r.b_prime.begin(), r.b_prime.end());
        std::sort(u1.begin(), u1.end());
        std::sort(u2.begin(), u2.end());
        bool separated = true;
        for (const auto& p : r.a_prime) separated = separated && side_of(r.line, p, o_.tol) != Side::Right;
        for (const auto& p : r.b_prime) separated = separated && side_of(r.line, p, o_.tol) != Side::Left;

        result["witness"] = to_string(r.witness);
        result["line"] = line_json(r.line);
        result["a_prime"] = points_json(r.a_prime);
        result["b_prime"] = points_json(r.b_prime);
        result["diameters"] = {{"a", da}, {"b", db}, {"a_prime", dap}, {"b_prime", dbp}};
        result["perimeter"] = {{"before", before}, {"after", after}};
        const Json inv = {{"union_preserved", u1 == u2},
                          {"separated", separated},
                          {"diameter_a", dap <= da + 1e-9},
                          {"diameter_b", dbp <= db + 1e-9},
                          {"perimeter_non_increasing", after <= before + 1e-9}};
        result["invariants"] = inv;
        return std::all_of(inv.begin(), inv.end(), [](const Json& v) { return v.get<bool>(); });
    }

    bool cluster2_cmd(Json& result) {
        const auto& s = points();
        const auto r = avis_min_max_2cluster(plane_, s);
        result["d_star"] = r.value;
        result["partition"] = partition_json(r.partition);
        return covers(r.partition, s.size()) && same_measures(plane_, s, r.partition, Measure::Diameter) &&
               combine(Combiner::Max, r.partition.measures) == r.value;
    }

    bool cluster2c_cmd(Json& params, Json& result) {
        params["d1"] = o_.d1;
        params["d2"] = o_.d2;
        const auto& s = points();
        const auto r = constrained_2cluster(plane_, s, o_.d1, o_.d2);
        if (!r) throw Infeasible{};
        result["partition"] = partition_json(*r);
        return covers(*r, s.size()) && same_measures(plane_, s, *r, Measure::Diameter) && r->measures[0] <= o_.d1 &&
               r->measures[1] <= o_.d2;
    }

    bool cluster3_cmd(Json& params, Json& result) {
        const auto& s = points();
        HRStats stats;
        Partition p;
        if (o_.d) {
            params["d"] = *o_.d;
            auto r = hr_feasible_3cluster(plane_, s, *o_.d, o_.seed, &stats);
            if (!r) throw Infeasible{{{"rotation", {{"seed", stats.seed}, {"angle", stats.angle}}}}};
            p = std::move(*r);
        } else {
            auto r = min_max_3cluster(plane_, s, o_.seed, &stats);
            result["d_star"] = r.value;
            p = std::move(r.partition);
        }
        result["partition"] = partition_json(p);
        result["rotation"] = {{"seed", stats.seed}, {"angle", stats.angle}};
        result["stats"] = {{"a_prime_tried", stats.a_prime_tried}, {"case1", stats.case1},
                           {"case2", stats.case2},         {"case3", stats.case3},
                           {"stopped", stats.stopped},     {"lemma_checks", stats.lemma_checks},
                           {"lemma_violations", stats.lemma_violations}, {"sheared", stats.sheared}};
        const double bound = o_.d ? *o_.d : result["d_star"].get<double>();
        return covers(p, s.size()) && same_measures(plane_, s, p, Measure::Diameter) &&
               combine(Combiner::Max, p.measures) <= bound && stats.lemma_violations == 0;
    }

    bool clusterk_cmd(Json& params, Json& result) {
        const Objective obj{combiner_from_string(o_.objective), measure_from_string(o_.measure)};
        params["k"] = o_.k;
        params["objective"] = to_string(obj.combiner);
        params["measure"] = to_string(obj.measure);
        const auto& s = points();
        const auto r = k_cluster_minimize(plane_, s, o_.k, obj);
        result["value"] = r.value;
        result["partition"] = partition_json(r.partition);
        return covers(r.partition, s.size()) && same_measures(plane_, s, r.partition, obj.measure) &&
               std::abs(combine(obj.combiner, r.partition.measures) - r.value) <= 1e-9 * std::max(1.0, r.value);
    }

    bool ballhull_cmd(Json& params, Json& result) {
        if (!o_.d) throw Error(ErrorCode::InvalidInput, "--d is required");
        const double d = *o_.d;
        params["d"] = d;
        const auto& s = points();
        BallHull hull;
        try {
            hull = ball_hull(plane_, s, d);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoBallContainsS) throw Infeasible{};
            throw;
        }
        result["vertices"] = points_json(hull.vertices);
        Json arcs = Json::array();
        for (const auto& arc : hull.arcs)
            arcs.push_back({{"center", io::point_json(arc.center)},
                            {"from", io::point_json(arc.from)},
                            {"to", io::point_json(arc.to)},
                            {"ccw", arc.ccw}});
        result["arcs"] = arcs;
        bool ok = std::all_of(s.begin(), s.end(), [&](const Point& p) { return bh_contains(plane_, hull, p); });

        if (!o_.query.empty() || !o_.deletes.empty()) {
            auto tree = build_tree(plane_, s, d);
            PointSet live = s;
            Json deleted = Json::array();
            for (auto i : o_.deletes) {
                if (i >= s.size()) throw Error(ErrorCode::InvalidInput, "--delete index out of range");
                delete_point(tree, s[i]);
                live.erase(std::find(live.begin(), live.end(), s[i]));
                deleted.push_back(i);
            }
            params["delete"] = deleted;
            result["live_count"] = tree.live_count();
            if (!o_.query.empty()) {
                const Point u = io::parse_point(o_.query);
                params["query"] = io::point_json(u);
                const auto far = query_far_point(tree, u);
                result["far_point"] = far ? io::point_json(*far) : Json(nullptr);
                const bool expected = std::any_of(live.begin(), live.end(),
                                                  [&](const Point& v) { return plane_.dist(u, v) >= d; });
                ok = ok && far.has_value() == expected;
            }
        }
        return ok;
    }

    bool mineball_cmd(Json& result) {
        const auto& s = points();
        const auto b = min_enclosing_ball(plane_, s);
        result["center"] = io::point_json(b.center);
        result["radius"] = b.radius;
        double r = 0.0;
        for (const auto& p : s) r = std::max(r, plane_.dist(b.center, p));
        return r <= b.radius;
    }

    bool plot_cmd(Json& params, Json& result) {
        if (o_.out.empty()) throw Error(ErrorCode::InvalidInput, "--out is required");
        params["scene"] = o_.scene;
        svg::Scene scene;
        if (o_.scene == "points") {
            const auto& s = points();
            scene.layers.push_back({s});
            scene.curves.push_back(svg::hull_curve(convex_hull(s), "#888888"));
        } else if (o_.scene == "separate") {
            if (o_.a.empty() || o_.b.empty()) throw Error(ErrorCode::InvalidInput, "--a and --b are required");
            const PointSet a = io::read_points(o_.a), b = io::read_points(o_.b);
            const auto r = separate_clusters(plane_, a, b);
            scene.curves.push_back(svg::hull_curve(convex_hull(a), "#9db4e0"));
            scene.curves.push_back(svg::hull_curve(convex_hull(b), "#e0a99d"));
            if (!r.a_prime.empty()) scene.layers.push_back({r.a_prime, "#1f4e9c"});
            if (!r.b_prime.empty()) scene.layers.push_back({r.b_prime, "#b03a2e"});
            scene.lines.push_back(r.line);
        } else if (o_.scene == "ballhull") {
            if (!o_.d) throw Error(ErrorCode::InvalidInput, "--d is required");
            const auto& s = points();
            const auto hull = ball_hull(plane_, s, *o_.d);
            scene.layers.push_back({s});
            for (const auto& arc : hull.arcs) scene.curves.push_back(svg::arc_curve(plane_, arc, "#2e7d32"));
        } else if (o_.scene == "figure5") {
            const auto f = two_arc_counterexample();
            scene.layers.push_back({f.points(), "#1f4e9c", {"p", "q", "r", "s"}});
            scene.curves.push_back(svg::sphere_curve(f.plane, f.a, 1.0, "#555555"));
            scene.curves.push_back(svg::sphere_curve(f.plane, f.b, 1.1, "#999999"));
        } else {
            throw Error(ErrorCode::InvalidInput, "unknown scene " + o_.scene);
        }
        svg::emit_svg(scene, o_.out);
        std::size_t glyphs = 0;
        for (const auto& l : scene.layers) glyphs += l.points.size();
        result["out"] = o_.out;
        result["elements"] = {{"points", glyphs}, {"curves", scene.curves.size()}, {"lines", scene.lines.size()}};
        return true;
    }

    const Options& o_;
    std::ostream& out_;
    NormedPlane plane_;
    std::optional<PointSet> pts_;
};

void print_human(std::ostream& out, const Json& report) {
    out << report["command"].get<std::string>() << ": " << report["status"].get<std::string>() << '\n';
    if (report.contains("result"))
        for (const auto& [key, value] : report["result"].items()) out << "  " << key << ": " << value.dump() << '\n';
    if (report.contains("wall_time_s")) out << "  wall_time_s: " << report["wall_time_s"].dump() << '\n';
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--norm", o.norm, "euclidean, l1, linf or a JSON descriptor file");
    app->add_option("--points", o.points, "CSV point file");
    app->add_option("--seed", o.seed, "seed for randomized steps");
    app->add_option("--tol", o.tol, "geometric tolerance")->check(CLI::PositiveNumber);
    app->add_flag("--json", o.json, "JSON report");
    app->add_flag("--timing", o.timing, "add wall time to the report");
    app->add_flag("--verify", o.verify, "re-check the reported claims");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Clustering and separation in normed planes", "normclust"};
    app.require_subcommand(1);
    app.add_subcommand("diameter", "diameter of a point set");
    auto* separate = app.add_subcommand("separate", "separate two overlapping clusters");
    app.add_subcommand("cluster2", "min-max diameter 2-clustering");
    auto* cluster2c = app.add_subcommand("cluster2c", "2-clustering with diameter bounds d1 >= d2");
    auto* cluster3 = app.add_subcommand("cluster3", "3-clustering: feasibility at --d, or min-max");
    auto* clusterk = app.add_subcommand("clusterk", "k-clustering for a monotone objective");
    auto* ballhull = app.add_subcommand("ballhull", "d-ball hull, with optional far-point queries");
    app.add_subcommand("mineball", "smallest enclosing ball");
    auto* plot = app.add_subcommand("plot", "write an SVG scene");
    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) add_common(sub, o);

    separate->add_option("--a", o.a, "first cluster CSV")->required();
    separate->add_option("--b", o.b, "second cluster CSV")->required();
    cluster2c->add_option("--d1", o.d1)->required();
    cluster2c->add_option("--d2", o.d2)->required();
    cluster3->add_option("--d", o.d, "diameter threshold");
    clusterk->add_option("--k", o.k)->check(CLI::Range(2, 4));
    clusterk->add_option("--objective", o.objective, "max, sum or sumsq");
    clusterk->add_option("--measure", o.measure, "diameter or radius");
    ballhull->add_option("--d", o.d, "ball radius")->required();
    ballhull->add_option("--query", o.query, "query point x,y");
    ballhull->add_option("--delete", o.deletes, "point index to delete (repeatable)");
    plot->add_option("--out", o.out, "SVG path")->required();
    plot->add_option("--scene", o.scene, "points, separate, ballhull or figure5");
    plot->add_option("--a", o.a);
    plot->add_option("--b", o.b);
    plot->add_option("--d", o.d);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    Json report;
    report["schema"] = 1;
    report["command"] = cmd;
    int code = 0;
    const auto start = std::chrono::steady_clock::now();
    try {
        Runner runner(o, out);
        report["norm"] = io::norm_to_json(runner.plane());
        Json params = Json::object(), result = Json::object();
        if (!o.points.empty()) params["points"] = o.points;
        params["seed"] = o.seed;
        params["tol"] = o.tol;
        try {
            const bool ok = runner.dispatch(cmd, params, result);
            report["params"] = params;
            report["status"] = "ok";
            report["result"] = result;
            if (o.verify) {
                report["verified"] = ok;
                if (!ok) code = 3;
            }
        } catch (const Infeasible& inf) {
            report["params"] = params;
            report["status"] = "infeasible";
            if (!inf.detail.is_null()) report["result"] = inf.detail;
            code = 1;
        }
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    }
    if (o.timing)
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.json)
        out << report.dump(2) << '\n';
    else
        print_human(out, report);
    if (code == 3) err << "error: --verify found a mismatch\n";
    return code;
}

}  // namespace normclust::cli
