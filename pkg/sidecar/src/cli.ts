#!/usr/bin/env node
// Turn an id<TAB>text file into an embedding store (default) or an
// id-parallel translated text file (--mode translate).
//
//   cli.js --model toy-hash --channel base --side ref --out refs.jsonl refs.tsv
//   cli.js --model toy-hash --channel en --side hyp --translate-to en \
//          --out hyps_en.jsonl hyps.tsv
//   cli.js --mode translate --translate-to en --out refs_en.tsv refs.tsv

import * as fs from 'node:fs';
import { pathToFileURL } from 'node:url';

import { loadEncoder } from './encoder.js';
import { parseInput, renderEmbeddingFile, writeFileAtomic } from './embed.js';
import { PROVIDERS, renderChannelFile, translateAll } from './translate.js';

const USAGE = `usage: cs-eval-sidecar [options] <input.tsv>

  --mode embed|translate   what to produce (default embed)
  --model NAME             encoder, toy-hash or toy-hash-<dim> (default toy-hash)
  --channel NAME           channel recorded on each embedding (default base)
  --side ref|hyp           side recorded on each embedding (default ref)
  --translate-to LANG      translate before embedding / the translate target
  --provider NAME          translation provider (default identity)
  --out PATH               output file (required)

Input: one utterance per line, id<TAB>text; # comments and blank lines
are skipped.`;

interface Args {
  mode: string;
  model: string;
  channel: string;
  side: string;
  translateTo: string | null;
  provider: string;
  out: string | null;
  input: string | null;
}

const FLAGS: Record<string, keyof Args> = {
  '--mode': 'mode',
  '--model': 'model',
  '--channel': 'channel',
  '--side': 'side',
  '--translate-to': 'translateTo',
  '--provider': 'provider',
  '--out': 'out',
};

function parseArgs(argv: string[]): Args {
  const args: Args = {
    mode: 'embed',
    model: 'toy-hash',
    channel: 'base',
    side: 'ref',
    translateTo: null,
    provider: 'identity',
    out: null,
    input: null,
  };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === '--help' || arg === '-h') {
      throw new UsageShown();
    }
    const key = FLAGS[arg];
    if (key !== undefined) {
      const value = argv[++i];
      if (value === undefined) {
        throw new Error(`${arg} needs a value`);
      }
      args[key] = value as never;
    } else if (arg.startsWith('-')) {
      throw new Error(`unknown flag ${arg}`);
    } else if (args.input === null) {
      args.input = arg;
    } else {
      throw new Error(`unexpected extra argument ${arg}`);
    }
  }
  return args;
}

class UsageShown extends Error {}

function validate(args: Args): string[] {
  const problems: string[] = [];
  if (args.input === null) {
    problems.push('an input file is required');
  } else if (!fs.existsSync(args.input)) {
    problems.push(`no such file: ${args.input}`);
  }
  if (args.out === null) {
    problems.push('--out is required');
  }
  if (args.mode !== 'embed' && args.mode !== 'translate') {
    problems.push(`--mode must be embed or translate, got '${args.mode}'`);
  }
  if (args.side !== 'ref' && args.side !== 'hyp') {
    problems.push(`--side must be ref or hyp, got '${args.side}'`);
  }
  if (!(args.provider in PROVIDERS)) {
    problems.push(`unknown provider '${args.provider}' (have: ${Object.keys(PROVIDERS).join(', ')})`);
  }
  if (args.mode === 'translate' && args.translateTo === null) {
    problems.push('--mode translate needs --translate-to');
  }
  return problems;
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (error) {
    if (error instanceof UsageShown) {
      console.log(USAGE);
      return 0;
    }
    console.error(`error: ${(error as Error).message}`);
    return 2;
  }
  const problems = validate(args);
  if (problems.length > 0) {
    for (const problem of problems) {
      console.error(`error: ${problem}`);
    }
    return 2;
  }

  try {
    let lines = parseInput(fs.readFileSync(args.input as string, 'utf8'));
    const provider = PROVIDERS[args.provider];

    if (args.mode === 'translate') {
      const results = translateAll(lines, args.translateTo as string, provider);
      writeFileAtomic(args.out as string,
        renderChannelFile(results, args.translateTo as string, args.provider));
      return 0;
    }

    if (args.translateTo !== null) {
      const results = translateAll(lines, args.translateTo, provider);
      const failed = results.filter((r) => r.failure !== undefined);
      if (failed.length > 0) {
        // Embedding a silently empty text would poison the store.
        throw new Error(`translation failed for ${failed.length} id(s), first: '${failed[0].id}'`);
      }
      lines = results.map(({ id, text }) => ({ id, text }));
    }
    const encoder = loadEncoder(args.model);
    writeFileAtomic(args.out as string,
      renderEmbeddingFile(lines, encoder, args.side, args.channel));
    return 0;
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
}

if (process.argv[1] !== undefined
    && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(run(process.argv.slice(2)));
}
