#!/usr/bin/env node
// tag --in raw.jsonl --out tagged.jsonl --model wink-pos-tagger@2.2.2

import * as fs from 'fs'

import { MODEL_ID, tagCorpus } from './tagger'

function parseArgs(argv: string[]): Record<string, string> {
  const args: Record<string, string> = {}
  for (let i = 0; i < argv.length; i += 1) {
    const key = argv[i]
    if (key.startsWith('--')) {
      args[key.slice(2)] = argv[i + 1] ?? ''
      i += 1
    } else {
      args._command = key
    }
  }
  return args
}

function main(): number {
  const args = parseArgs(process.argv.slice(2))
  if (args._command !== 'tag' || !args.in || !args.out) {
    process.stderr.write(
      `usage: tag --in raw.jsonl --out tagged.jsonl [--model ${MODEL_ID}]\n`,
    )
    return 2
  }
  const model = args.model ?? MODEL_ID
  if (model !== MODEL_ID) {
    process.stderr.write(
      `error: only the pinned model ${MODEL_ID} is available (asked for ${model})\n`,
    )
    return 1
  }
  let raw: string
  try {
    raw = fs.readFileSync(args.in, 'utf-8')
  } catch (err) {
    process.stderr.write(`error: cannot read ${args.in}: ${(err as Error).message}\n`)
    return 1
  }
  try {
    const { lines, summary } = tagCorpus(raw.split('\n'))
    fs.writeFileSync(args.out, lines.map((l) => l + '\n').join(''), 'utf-8')
    const counts: Record<string, number> = {}
    for (const key of Object.keys(summary.uposCounts).sort()) {
      counts[key] = summary.uposCounts[key]
    }
    summary.uposCounts = counts
    process.stdout.write(JSON.stringify(summary, null, 2) + '\n')
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`)
    return 1
  }
  return 0
}

process.exit(main())
