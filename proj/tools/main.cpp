// Copyright 2026 The Egosum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: validate, filter, sweep, rank, weights, summarize,
// evaluate, synth. Exit codes: 0 success, 1 data error, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egosum/dataset_io.hpp"
#include "egosum/pipeline.hpp"
#include "egosum/synth.hpp"

namespace {

using namespace egosum;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file " + path);
    f << content;
}

std::pair<int, int> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

FusionWeights weights_from_values(const std::vector<double>& values) {
    if (values.size() != 3)
        throw CLI::ValidationError("--weights", "expected three comma-separated weights");
    FusionWeights w;
    w.values = {values[0], values[1], values[2]};
    return w;
}

// shared dataset/gt/threshold options
struct CommonOpts {
    std::string dataset_path;
    std::string gt_path;
    std::string out_path;
    double threshold = 0.025;
};

struct WeightOpts {
    std::vector<double> fixed;
    bool estimate = false;
    std::vector<std::string> estimation_events;
};

void add_dataset_opts(CLI::App* cmd, CommonOpts& opts, bool with_threshold = true) {
    cmd->add_option("dataset", opts.dataset_path, "dataset JSONL file")->required();
    cmd->add_option("--gt", opts.gt_path, "supplementary ground-truth JSONL file");
    cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
    if (with_threshold)
        cmd->add_option("--threshold", opts.threshold, "informativeness threshold")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
}

void add_weight_opts(CLI::App* cmd, WeightOpts& opts) {
    cmd->add_option("--weights", opts.fixed, "fixed fusion weights w_saliency,w_objects,w_faces")
        ->delimiter(',')
        ->expected(3);
    cmd->add_flag("--estimate-weights", opts.estimate,
                  "estimate fusion weights from stand-alone MSMS AUCs");
    cmd->add_option("--estimate-events", opts.estimation_events,
                    "events used for weight estimation (default: all with GT summaries)")
        ->delimiter(',');
}

void apply_weight_opts(const WeightOpts& opts, PipelineConfig& cfg) {
    if (!opts.fixed.empty() && (opts.estimate || !opts.estimation_events.empty()))
        throw CLI::ValidationError("--weights", "cannot combine with weight estimation");
    if (!opts.fixed.empty()) {
        cfg.fixed_weights = weights_from_values(opts.fixed);
    } else if (opts.estimate || !opts.estimation_events.empty()) {
        cfg.estimate_fusion_weights = true;
        cfg.estimation_events = opts.estimation_events;
    }
}

// pooled GT Level 1 labels and informativeness scores across all GT events
void pool_labels(const Dataset& d, std::map<std::string, bool>& labels,
                 std::map<std::string, double>& scores) {
    for (const Event& ev : d.events) {
        if (!ev.ground_truth) continue;
        for (const FrameRecord& f : ev.frames) {
            auto it = ev.ground_truth->informative_labels.find(f.frame_id);
            if (it == ev.ground_truth->informative_labels.end()) continue;
            labels[f.frame_id] = it->second;
            scores[f.frame_id] = f.informativeness;
        }
    }
    if (labels.empty())
        throw std::runtime_error("no ground-truth informativeness labels in the dataset");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"egosum - diversity-aware summaries for egocentric photo stream events"};
    app.require_subcommand(1);
    app.set_config("--config")->description("key=value config file, overridden by flags");

    int exit_code = 0;

    // validate ---------------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "check a dataset against every invariant");
    auto validate_opts = std::make_shared<CommonOpts>();
    add_dataset_opts(validate, *validate_opts, false);
    validate->callback([validate_opts, &exit_code] {
        const Dataset d = load_dataset_files(validate_opts->dataset_path, validate_opts->gt_path);
        const std::vector<Violation> violations = validate_dataset(d);
        std::string out;
        for (const auto& v : violations)
            out += v.type_name + "." + v.field + " [" + v.id + "]: " + v.message + "\n";
        if (violations.empty()) {
            out += "OK: " + std::to_string(d.events.size()) + " events, feature_dim " +
                   std::to_string(d.feature_dim) + "\n";
        }
        write_output(validate_opts->out_path, out);
        if (!violations.empty()) {
            std::cerr << "validate: " << violations.size() << " violation(s) found\n";
            exit_code = 1;
        }
    });

    // filter -----------------------------------------------------------------
    auto* filter = app.add_subcommand("filter", "apply the informativeness threshold per event");
    auto filter_opts = std::make_shared<CommonOpts>();
    add_dataset_opts(filter, *filter_opts);
    filter->callback([filter_opts] {
        const Dataset d = load_dataset_files(filter_opts->dataset_path, filter_opts->gt_path);
        std::vector<FilteredEvent> filtered;
        filtered.reserve(d.events.size());
        for (const Event& ev : d.events)
            filtered.push_back(filter_informative(ev, filter_opts->threshold));
        write_output(filter_opts->out_path, filter_report_json(filtered));
    });

    // sweep ------------------------------------------------------------------
    auto* sweep =
        app.add_subcommand("sweep", "precision/recall/F-measure over a threshold sweep (CSV)");
    auto sweep_opts = std::make_shared<CommonOpts>();
    auto sweep_thresholds = std::make_shared<std::vector<double>>();
    add_dataset_opts(sweep, *sweep_opts, false);
    sweep->add_option("--thresholds", *sweep_thresholds,
                      "strictly increasing thresholds (default: 0,0.025,...,1)")
        ->delimiter(',');
    sweep->callback([sweep_opts, sweep_thresholds] {
        const Dataset d = load_dataset_files(sweep_opts->dataset_path, sweep_opts->gt_path);
        std::map<std::string, bool> labels;
        std::map<std::string, double> scores;
        pool_labels(d, labels, scores);
        std::vector<double> thresholds = *sweep_thresholds;
        if (thresholds.empty())
            for (int i = 0; i <= 40; ++i) thresholds.push_back(i * 0.025);
        write_output(sweep_opts->out_path, sweep_csv(threshold_sweep(labels, scores, thresholds)));
    });

    // rank -------------------------------------------------------------------
    auto* rank = app.add_subcommand("rank", "per-event ranked list for one criterion (CSV)");
    auto rank_opts = std::make_shared<CommonOpts>();
    auto rank_weights = std::make_shared<WeightOpts>();
    auto rank_criterion = std::make_shared<std::string>("fused");
    add_dataset_opts(rank, *rank_opts);
    rank->add_option("--criterion", *rank_criterion, "saliency|objects|faces|fused")
        ->check(CLI::IsMember({"saliency", "objects", "faces", "fused"}))
        ->capture_default_str();
    add_weight_opts(rank, *rank_weights);
    rank->callback([rank_opts, rank_weights, rank_criterion] {
        const Dataset d = load_dataset_files(rank_opts->dataset_path, rank_opts->gt_path);
        const Criterion criterion = *criterion_from_string(*rank_criterion);

        FusionWeights weights;
        if (criterion == Criterion::fused) {
            PipelineConfig wcfg;  // reuse the weight-mode plumbing
            apply_weight_opts(*rank_weights, wcfg);
            weights = wcfg.estimate_fusion_weights
                          ? estimate_fusion_weights_msms(d, wcfg.estimation_events,
                                                         rank_opts->threshold, 101)
                                .weights
                          : wcfg.fixed_weights;
        }

        std::vector<RankedList> lists;
        for (const Event& ev : d.events) {
            const FilteredEvent fe = filter_informative(ev, rank_opts->threshold);
            if (fe.kept.empty()) continue;
            if (criterion == Criterion::fused) {
                std::array<RankedList, 3> per;
                for (Criterion c : kRelevanceCriteria)
                    per[static_cast<std::size_t>(c)] = rank_event(fe, c);
                lists.push_back(fuse_relevance(per, weights));
            } else {
                lists.push_back(rank_event(fe, criterion));
            }
        }
        write_output(rank_opts->out_path, ranked_csv(lists));
    });

    // weights ----------------------------------------------------------------
    auto* weights_cmd =
        app.add_subcommand("weights", "estimate fusion weights from stand-alone MSMS AUCs");
    auto weights_opts = std::make_shared<CommonOpts>();
    auto weights_events = std::make_shared<std::vector<std::string>>();
    auto weights_grid = std::make_shared<int>(101);
    add_dataset_opts(weights_cmd, *weights_opts);
    weights_cmd
        ->add_option("--events", *weights_events,
                     "estimation events (default: all with GT summaries)")
        ->delimiter(',');
    weights_cmd->add_option("--grid", *weights_grid, "MSMS grid size")->capture_default_str();
    weights_cmd->callback([weights_opts, weights_events, weights_grid] {
        const Dataset d = load_dataset_files(weights_opts->dataset_path, weights_opts->gt_path);
        const WeightEstimate est = estimate_fusion_weights_msms(d, *weights_events,
                                                                weights_opts->threshold,
                                                                *weights_grid);
        write_output(weights_opts->out_path, weights_report_json(est));
    });

    // summarize ----------------------------------------------------------------
    auto* summarize = app.add_subcommand("summarize", "run the full pipeline and emit summaries");
    auto sum_opts = std::make_shared<CommonOpts>();
    auto sum_weights = std::make_shared<WeightOpts>();
    auto sum_fraction = std::make_shared<double>(0.0);
    auto sum_length = std::make_shared<int>(0);
    auto sum_no_novelty = std::make_shared<bool>(false);
    auto sum_seed = std::make_shared<std::uint64_t>(0);
    auto sum_jobs = std::make_shared<int>(1);
    add_dataset_opts(summarize, *sum_opts);
    auto* frac_opt =
        summarize->add_option("--fraction", *sum_fraction, "summary length as a fraction of M");
    auto* len_opt = summarize->add_option("--length", *sum_length, "explicit summary length T");
    frac_opt->excludes(len_opt);
    add_weight_opts(summarize, *sum_weights);
    summarize->add_flag("--no-novelty", *sum_no_novelty, "skip the novelty re-ranking");
    summarize->add_option("--seed", *sum_seed, "random seed recorded in the config");
    summarize->add_option("--jobs", *sum_jobs, "worker pool size (0 = hardware)");
    summarize->callback([sum_opts, sum_weights, sum_fraction, sum_length, sum_no_novelty, sum_seed,
                         sum_jobs] {
        if ((*sum_fraction > 0.0) == (*sum_length > 0))
            throw CLI::ValidationError("--fraction", "set exactly one of --fraction and --length");
        const Dataset d = load_dataset_files(sum_opts->dataset_path, sum_opts->gt_path);
        PipelineConfig cfg;
        cfg.informativeness_threshold = sum_opts->threshold;
        if (*sum_fraction > 0.0)
            cfg.summary_fraction = *sum_fraction;
        else
            cfg.summary_length = *sum_length;
        cfg.use_novelty = !*sum_no_novelty;
        cfg.random_seed = *sum_seed;
        cfg.jobs = *sum_jobs;
        apply_weight_opts(*sum_weights, cfg);
        write_output(sum_opts->out_path, summarize_report_json(run_pipeline(d, cfg)));
    });

    // evaluate -----------------------------------------------------------------
    auto* evaluate =
        app.add_subcommand("evaluate", "score the pipeline against ground-truth summaries");
    auto eval_opts = std::make_shared<CommonOpts>();
    auto eval_weights = std::make_shared<WeightOpts>();
    auto eval_grid = std::make_shared<int>(101);
    auto eval_jobs = std::make_shared<int>(1);
    auto eval_no_novelty = std::make_shared<bool>(false);
    auto eval_curves = std::make_shared<std::string>();
    add_dataset_opts(evaluate, *eval_opts);
    evaluate->add_option("--grid", *eval_grid, "MSMS grid size")->capture_default_str();
    evaluate->add_option("--jobs", *eval_jobs, "worker pool size (0 = hardware)");
    evaluate->add_flag("--no-novelty", *eval_no_novelty, "evaluate the relevance-only ranking");
    evaluate->add_option("--curves-out", *eval_curves, "write per-event SMS curves as CSV");
    add_weight_opts(evaluate, *eval_weights);
    evaluate->callback([eval_opts, eval_weights, eval_grid, eval_jobs, eval_no_novelty,
                        eval_curves] {
        const Dataset d = load_dataset_files(eval_opts->dataset_path, eval_opts->gt_path);
        PipelineConfig cfg;
        cfg.informativeness_threshold = eval_opts->threshold;
        cfg.summary_fraction = 1.0;  // curves span every prefix; truncation is irrelevant here
        cfg.grid_size = *eval_grid;
        cfg.jobs = *eval_jobs;
        cfg.use_novelty = !*eval_no_novelty;
        apply_weight_opts(*eval_weights, cfg);
        const EvaluationReport report = evaluate_pipeline(d, cfg);
        write_output(eval_opts->out_path, evaluation_report_json(report));
        if (!eval_curves->empty())
            write_output(*eval_curves, curves_csv(evaluation_curves(report, *eval_grid)));
    });

    // synth --------------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a synthetic clustered dataset");
    auto synth_out = std::make_shared<std::string>();
    auto synth_events = std::make_shared<int>(10);
    auto synth_frames = std::make_shared<std::string>("30:60");
    auto synth_clusters = std::make_shared<std::string>("3:6");
    auto synth_dim = std::make_shared<int>(16);
    auto synth_noise = std::make_shared<double>(0.35);
    auto synth_noninf = std::make_shared<double>(0.25);
    auto synth_seed = std::make_shared<std::uint64_t>(0);
    synth->add_option("--out", *synth_out, "output dataset file (default: stdout)");
    synth->add_option("--events", *synth_events, "event count")->capture_default_str();
    synth->add_option("--frames", *synth_frames, "frames per event, lo:hi or a single value")
        ->capture_default_str();
    synth->add_option("--clusters", *synth_clusters, "clusters per event, lo:hi or a single value")
        ->capture_default_str();
    synth->add_option("--dim", *synth_dim, "feature dimension")->capture_default_str();
    synth->add_option("--noise", *synth_noise, "within-cluster feature noise")
        ->capture_default_str();
    synth->add_option("--noninformative", *synth_noninf, "non-informative frame rate")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    synth->add_option("--seed", *synth_seed, "generator seed")->capture_default_str();
    synth->callback([synth_out, synth_events, synth_frames, synth_clusters, synth_dim, synth_noise,
                     synth_noninf, synth_seed] {
        SynthParams p;
        p.events = *synth_events;
        p.frames_per_event = parse_range(*synth_frames);
        p.clusters_per_event = parse_range(*synth_clusters);
        p.feature_dim = *synth_dim;
        p.noise_scale = *synth_noise;
        p.noninformative_rate = *synth_noninf;
        p.seed = *synth_seed;
        write_output(*synth_out, serialize_dataset(synth_dataset(p)));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
