/**
 * Golden-fixture conformance: replay the core's frozen fixtures through the
 * binding and require identical support index sets, untouched in-support
 * logits, and renormalized masses within 1e-6.
 */

import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";

import { softmax } from "./probs.js";
import { makeProcessor } from "./processor.js";
import { StrategyConfig } from "./strategies.js";

export const RENORM_TOLERANCE = 1e-6;

interface FixtureEntry {
  token: string;
  prob?: number;
  logit?: number;
}

interface ExpectedCase {
  strategy: StrategyConfig;
  support: number[];
  renormalized: number[];
  threshold: number | null;
  bandwidth: number | null;
}

export interface GoldenFixture {
  name: string;
  logits: number[];
  expected: ExpectedCase[];
}

export interface CaseFailure {
  fixture: string;
  caseIndex: number;
  strategy: string;
  reason: string;
}

export interface ConformanceReport {
  fixtures: number;
  cases: number;
  passed: number;
  failures: CaseFailure[];
}

/** Distribution columns become logits: probability files via ln(p). */
export function loadFixture(path: string, name: string): GoldenFixture {
  const data = JSON.parse(readFileSync(path, "utf-8"));
  const expected: ExpectedCase[] = data.expected ?? [];
  if (expected.length === 0) {
    throw new Error(`${name}: fixture has no expected cases`);
  }
  let logits: number[];
  if (Array.isArray(data.logits)) {
    logits = (data.logits as FixtureEntry[]).map((e) => e.logit as number);
  } else if (Array.isArray(data.probs)) {
    const raw = (data.probs as FixtureEntry[]).map((e) => e.prob as number);
    const total = raw.reduce((a, b) => a + b, 0);
    logits = raw.map((p) => (p > 0 ? Math.log(p / total) : -Infinity));
  } else {
    throw new Error(`${name}: fixture has neither 'probs' nor 'logits'`);
  }
  return { name, logits, expected };
}

function sameIndexSet(a: readonly number[], b: readonly number[]): boolean {
  if (a.length !== b.length) return false;
  const sa = [...a].sort((x, y) => x - y);
  const sb = [...b].sort((x, y) => x - y);
  return sa.every((v, i) => v === sb[i]);
}

export function checkFixture(fixture: GoldenFixture): CaseFailure[] {
  const failures: CaseFailure[] = [];
  fixture.expected.forEach((expected, caseIndex) => {
    const label = expected.strategy.kind;
    const fail = (reason: string) =>
      failures.push({ fixture: fixture.name, caseIndex, strategy: label, reason });

    const processor = makeProcessor(expected.strategy);
    const masked = processor.process([], fixture.logits);

    if (masked.length !== fixture.logits.length) {
      fail(`output length ${masked.length} != ${fixture.logits.length}`);
      return;
    }
    const supportSet = masked
      .map((x, i) => (Number.isFinite(x) ? i : -1))
      .filter((i) => i >= 0);
    if (!sameIndexSet(supportSet, expected.support)) {
      fail(`support {${supportSet}} != expected {${expected.support}}`);
      return;
    }
    for (const i of supportSet) {
      if (masked[i] !== fixture.logits[i]) {
        fail(`in-support logit ${i} was modified`);
        return;
      }
    }
    // ordered support from the strategy itself must match exactly too
    const ordered = processor.truncate(fixture.logits).support;
    if (ordered.length !== expected.support.length || ordered.some((v, i) => v !== expected.support[i])) {
      fail(`ordered support [${ordered}] != expected [${expected.support}]`);
      return;
    }
    // softmax of the masked logits (at the config temperature) must land on
    // the core's renormalized distribution
    const renorm = softmax(masked, expected.strategy.temperature ?? 1.0);
    for (let j = 0; j < expected.support.length; j++) {
      const got = renorm[expected.support[j]];
      const want = expected.renormalized[j];
      if (Math.abs(got - want) > RENORM_TOLERANCE) {
        fail(`renormalized[${expected.support[j]}] = ${got}, expected ${want}`);
        return;
      }
    }
  });
  return failures;
}

export function runConformance(dir: string): ConformanceReport {
  const files = readdirSync(dir)
    .filter((f) => f.endsWith(".json"))
    .sort();
  if (files.length === 0) {
    throw new Error(`no golden fixtures found in ${dir}`);
  }
  const report: ConformanceReport = { fixtures: files.length, cases: 0, passed: 0, failures: [] };
  for (const file of files) {
    const fixture = loadFixture(join(dir, file), file);
    const failures = checkFixture(fixture);
    report.cases += fixture.expected.length;
    report.passed += fixture.expected.length - failures.length;
    report.failures.push(...failures);
  }
  return report;
}
