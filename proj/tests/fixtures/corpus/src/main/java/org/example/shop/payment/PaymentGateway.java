package org.example.shop.payment;

import java.math.BigDecimal;

public interface PaymentGateway {
    String authorize(String account, BigDecimal amount) throws PaymentException;

    void capture(String authorization);

    void refund(String authorization, BigDecimal amount);
}
