// Penn Treebank to universal POS tags, following the UD English conventions
// (modals to AUX, infinitival "to" and possessive clitic to PART, phrasal
// particles to ADP).

const PTB_TO_UPOS: Record<string, string> = {
  CC: 'CCONJ',
  CD: 'NUM',
  DT: 'DET',
  EX: 'PRON',
  FW: 'X',
  IN: 'ADP',
  JJ: 'ADJ',
  JJR: 'ADJ',
  JJS: 'ADJ',
  LS: 'X',
  MD: 'AUX',
  NN: 'NOUN',
  NNS: 'NOUN',
  NNP: 'PROPN',
  NNPS: 'PROPN',
  PDT: 'DET',
  POS: 'PART',
  PRP: 'PRON',
  PRP$: 'PRON',
  RB: 'ADV',
  RBR: 'ADV',
  RBS: 'ADV',
  RP: 'ADP',
  SYM: 'SYM',
  TO: 'PART',
  UH: 'INTJ',
  VB: 'VERB',
  VBD: 'VERB',
  VBG: 'VERB',
  VBN: 'VERB',
  VBP: 'VERB',
  VBZ: 'VERB',
  WDT: 'DET',
  WP: 'PRON',
  WP$: 'PRON',
  WRB: 'ADV',
}

const SYMBOL_POS = new Set(['#', '$', 'SYM'])

export function ptbToUpos(pos: string | undefined, winkTag: string): string {
  if (pos !== undefined && SYMBOL_POS.has(pos)) return 'SYM'
  if (winkTag === 'punctuation') return 'PUNCT'
  if (winkTag === 'number') return 'NUM'
  if (winkTag === 'email' || winkTag === 'url' || winkTag === 'hashtag' || winkTag === 'mention') {
    return 'X'
  }
  if (pos !== undefined && pos in PTB_TO_UPOS) return PTB_TO_UPOS[pos]
  return 'X'
}
