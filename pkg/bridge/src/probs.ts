/** Probability helpers shared by the strategies. All math is float64. */

export interface EntropyReport {
  entropy: number;
  maxEntropy: number;
  /** entropy / ln(n); 0 for single-token vocabularies. */
  normalized: number;
}

/**
 * Numerically stable softmax: the finite maximum is subtracted before
 * exponentiation. `-Infinity` entries map to exactly 0.
 */
export function softmax(logits: readonly number[], temperature = 1.0): number[] {
  if (!(temperature > 0) || !Number.isFinite(temperature)) {
    throw new RangeError(`temperature must be a positive real, got ${temperature}`);
  }
  const scaled = logits.map((x) => x / temperature);
  let max = -Infinity;
  for (const x of scaled) {
    if (Number.isFinite(x) && x > max) max = x;
  }
  if (max === -Infinity) {
    throw new RangeError("all logits are masked (-Infinity)");
  }
  const exps = scaled.map((x) => Math.exp(x - max));
  let total = 0;
  for (const e of exps) total += e;
  return exps.map((e) => e / total);
}

/** Shannon entropy in nats with the convention 0*log(0) = 0. */
export function entropyOf(probs: readonly number[]): EntropyReport {
  let h = 0;
  for (const p of probs) {
    if (p > 0) h -= p * Math.log(p);
  }
  const maxEntropy = Math.log(probs.length);
  const normalized =
    probs.length === 1 ? 0 : Math.min(Math.max(h / maxEntropy, 0), 1);
  return { entropy: h, maxEntropy, normalized };
}

/** Argmax with ties broken by lowest index. */
export function argmaxLowest(probs: readonly number[]): number {
  let best = 0;
  for (let i = 1; i < probs.length; i++) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

/** Indices of kept tokens, descending probability, ties by lowest index. */
export function orderedIndices(
  probs: readonly number[],
  keep: (p: number, i: number) => boolean,
): number[] {
  const idx: number[] = [];
  for (let i = 0; i < probs.length; i++) {
    if (keep(probs[i], i)) idx.push(i);
  }
  idx.sort((a, b) => probs[b] - probs[a] || a - b);
  return idx;
}
