/**
 * Logits-processor surface: the calling convention ML inference stacks
 * expect from a per-step hook.  The processor softmaxes the logits at the
 * config temperature, truncates, and returns a new logit vector with
 * non-support entries set to `-Infinity` and support entries untouched, so
 * it composes with other processors in a pipeline.
 */

import { softmax } from "./probs.js";
import { StrategyConfig, TruncationResult, truncate } from "./strategies.js";

export interface LogitsProcessor {
  config: StrategyConfig;
  /**
   * @param inputIds generated-so-far token ids; accepted for signature
   *   compatibility, unused (the strategies are history-free)
   * @param logits one score per vocabulary entry; -Infinity = pre-masked
   * @returns a fresh array of the same length
   */
  process(inputIds: readonly number[], logits: readonly number[]): number[];
  /** The underlying truncation, for diagnostics. */
  truncate(logits: readonly number[]): TruncationResult;
}

export function makeProcessor(config: StrategyConfig): LogitsProcessor {
  // validate hyperparameters eagerly so bad configs fail at construction
  truncate(config, [0.6, 0.4]);

  const run = (logits: readonly number[]): TruncationResult =>
    truncate(config, softmax(logits, config.temperature ?? 1.0));

  return {
    config,
    truncate: run,
    process(inputIds: readonly number[], logits: readonly number[]): number[] {
      void inputIds;
      const kept = new Set(run(logits).support);
      return logits.map((x, i) => (kept.has(i) ? x : -Infinity));
    },
  };
}
