declare module 'wink-pos-tagger' {
  export interface WinkToken {
    value: string
    tag: 'word' | 'punctuation' | 'number' | 'email' | 'mention' | 'hashtag' | 'url' | string
    normal?: string
    pos?: string
    lemma?: string
  }
  export interface WinkTagger {
    tagSentence(sentence: string): WinkToken[]
    tagRawTokens(tokens: string[]): WinkToken[]
  }
  export default function posTagger(): WinkTagger
}
