/**
 * Truncation strategies over a probability vector.
 *
 * Mirrors the core semantics exactly: inclusive (>=) thresholds, supports
 * ordered by descending probability with ties to the lowest index,
 * zero-probability tokens never kept, and the mode always present.
 */

import { argmaxLowest, entropyOf, orderedIndices } from "./probs.js";

/** Strategy config; field names match the golden-fixture JSON. */
export type StrategyConfig =
  | { kind: "top-b"; base_bandwidth: number; temperature?: number }
  | { kind: "top-k"; k: number; temperature?: number }
  | { kind: "top-p"; p: number; temperature?: number }
  | { kind: "min-p"; alpha: number; temperature?: number }
  | { kind: "epsilon"; epsilon: number; temperature?: number }
  | { kind: "eta"; eta: number; temperature?: number }
  | { kind: "temperature"; temperature?: number };

export interface TruncationResult {
  /** Token indices, descending input probability, ties by lowest index. */
  support: number[];
  /** Probability mass per support member; sums to 1. */
  renormalized: number[];
  /** Absolute probability cutoff applied, or null for prefix rules. */
  threshold: number | null;
  /** Effective bandwidth (relative-band strategies only). */
  bandwidth: number | null;
}

/** Grace for "cumulative mass reached p" so decimal boundaries don't flip. */
const CUMSUM_EPS = 1e-12;

function assertUnitOpen(value: number, name: string): void {
  if (!(value > 0 && value < 1)) {
    throw new RangeError(`${name} must lie in (0, 1), got ${value}`);
  }
}

function assertUnitHalfOpen(value: number, name: string): void {
  if (!(value > 0 && value <= 1)) {
    throw new RangeError(`${name} must lie in (0, 1], got ${value}`);
  }
}

function result(
  probs: readonly number[],
  support: number[],
  threshold: number | null,
  bandwidth: number | null,
): TruncationResult {
  let mass = 0;
  for (const i of support) mass += probs[i];
  return {
    support,
    renormalized: support.map((i) => probs[i] / mass),
    threshold,
    bandwidth,
  };
}

function thresholdSupport(probs: readonly number[], threshold: number): number[] {
  return orderedIndices(probs, (p) => p >= threshold && p > 0);
}

export function truncate(config: StrategyConfig, probs: readonly number[]): TruncationResult {
  switch (config.kind) {
    case "top-b": {
      assertUnitOpen(config.base_bandwidth, "base_bandwidth");
      const report = entropyOf(probs);
      const raw = config.base_bandwidth * (1 + report.normalized);
      const bandwidth = Math.min(raw, 1);
      const threshold = (1 - bandwidth) * Math.max(...probs);
      return result(probs, thresholdSupport(probs, threshold), threshold, bandwidth);
    }
    case "top-k": {
      if (!Number.isInteger(config.k) || config.k < 1) {
        throw new RangeError(`k must be a positive integer, got ${config.k}`);
      }
      const order = orderedIndices(probs, (p) => p > 0);
      return result(probs, order.slice(0, config.k), null, null);
    }
    case "top-p": {
      assertUnitHalfOpen(config.p, "p");
      const order = orderedIndices(probs, (p) => p > 0);
      const support: number[] = [];
      let cum = 0;
      for (const i of order) {
        support.push(i);
        cum += probs[i];
        if (cum >= config.p - CUMSUM_EPS) break;
      }
      return result(probs, support, null, null);
    }
    case "min-p": {
      assertUnitHalfOpen(config.alpha, "alpha");
      const threshold = config.alpha * probs[argmaxLowest(probs)];
      return result(probs, thresholdSupport(probs, threshold), threshold, null);
    }
    case "epsilon": {
      assertUnitOpen(config.epsilon, "epsilon");
      const support = thresholdSupport(probs, config.epsilon);
      if (support.length === 0) support.push(argmaxLowest(probs));
      return result(probs, support, config.epsilon, null);
    }
    case "eta": {
      assertUnitOpen(config.eta, "eta");
      const h = entropyOf(probs).entropy;
      const cutoff = Math.min(config.eta, Math.sqrt(config.eta) * Math.exp(-h));
      const support = thresholdSupport(probs, cutoff);
      if (support.length === 0) support.push(argmaxLowest(probs));
      return result(probs, support, cutoff, null);
    }
    case "temperature": {
      return result(probs, orderedIndices(probs, (p) => p > 0), null, null);
    }
  }
}
