Deck() {
   c = new ArrayList<Card>();

   for (short a=0; a<=3; a++) {
    	for (short b=0; b<=12; b++) {
     	   //add cards to deck
     	   c.add(new Card(a,b)); 
     	}
   }
   shuffle();
}

Card(short s, short r) {
   //rank of card created: Ace, two, King
   this.r=r; 
   //suit: Spade, Club, Heart, Diamond
   this.s=s; 
}

Hand(Deck d) {
   v = new int[6];
   c = new Card[5];
   for (int x=0; x<5; x++) {
       c[x] = d.drawFromDeck();
   }
   HighestCardOnlyHand=true;
   getRanksOfCards();
   getPairsTripletsFours();
   Flush=isFlush();
   Straight=isStraight();
   setTypeOfHand();
   setHighestRankedCardValues();
}
