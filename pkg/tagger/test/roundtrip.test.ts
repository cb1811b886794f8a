import assert from 'node:assert/strict'
import { spawnSync } from 'node:child_process'
import * as path from 'node:path'
import { test } from 'node:test'

// The adapter's only contract with the analysis toolkit is the JSONL file
// pair, so the round trip drives the real Python loader.

const TAGGER_ROOT = path.join(__dirname, '..', '..')
const REPO_ROOT = path.join(TAGGER_ROOT, '..')
const GOLDEN = path.join(TAGGER_ROOT, 'test', 'fixtures', 'golden.tagged.jsonl')

const SNIPPET = `
import json, sys
from convoscale.ingest import load_tagged_jsonl
corpus = load_tagged_jsonl(sys.argv[1])
print(json.dumps({
    "conversations": len(corpus),
    "utterances": corpus.n_utterances,
    "is_tagged": corpus.is_tagged,
    "intj_forms": sorted({t.form for c in corpus for t in c.tokens() if t.macro == "INTJ"}),
}))
`

test('golden file round-trips through the primary loader without losing utterances', (t) => {
  const env = {
    ...process.env,
    PYTHONPATH: [path.join(REPO_ROOT, 'src'), process.env.PYTHONPATH ?? '']
      .filter(Boolean)
      .join(path.delimiter),
  }
  const probe = spawnSync('python3', ['-c', 'import convoscale'], { env })
  if (probe.status !== 0) {
    t.skip('python3 with the convoscale package is not available')
    return
  }
  const result = spawnSync('python3', ['-c', SNIPPET, GOLDEN], { env, encoding: 'utf-8' })
  assert.equal(result.status, 0, result.stderr)
  const payload = JSON.parse(result.stdout)
  assert.equal(payload.conversations, 3)
  assert.equal(payload.utterances, 20)
  assert.equal(payload.is_tagged, true)
  assert.deepEqual(payload.intj_forms, ['oh', 'yeah'])
})
